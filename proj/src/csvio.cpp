#include "acoustics/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace acoustics {

std::string format_double(double v) {
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == v) break;
    }
    return buf;
}

void write_field_csv(std::ostream& os, const Field& f) {
    const Grid& g = f.grid;
    os << "# field v1\n";
    if (g.dim == 1) {
        os << "i,value\n";
        for (int i = 0; i < g.n; ++i)
            os << i << ',' << format_double(f.values[i]) << '\n';
    } else {
        os << "i,j,value\n";
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i)
                os << i << ',' << j << ',' << format_double(f.values[g.index(i, j)]) << '\n';
    }
}

Field read_field_csv(std::istream& is, const Grid& g) {
    std::string line;
    if (!std::getline(is, line) || line != "# field v1")
        throw std::runtime_error("field CSV: missing '# field v1' header");
    if (!std::getline(is, line))
        throw std::runtime_error("field CSV: missing column header");
    const std::string expect = g.dim == 1 ? "i,value" : "i,j,value";
    if (line != expect)
        throw std::runtime_error("field CSV: expected columns '" + expect + "', got '" +
                                 line + "'");
    Field f(g);
    std::vector<bool> seen(g.size(), false);
    std::size_t count = 0;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        int i = -1, j = 0;
        double v = 0.0;
        char comma = 0;
        if (g.dim == 1) {
            if (!(row >> i >> comma >> v) || comma != ',')
                throw std::runtime_error("field CSV: malformed row '" + line + "'");
        } else {
            char comma2 = 0;
            if (!(row >> i >> comma >> j >> comma2 >> v) || comma != ',' || comma2 != ',')
                throw std::runtime_error("field CSV: malformed row '" + line + "'");
        }
        if (i < 0 || i >= g.n || j < 0 || j >= (g.dim == 1 ? 1 : g.n))
            throw std::runtime_error("field CSV: index out of range in row '" + line + "'");
        const std::size_t k = g.index(i, j);
        if (seen[k]) throw std::runtime_error("field CSV: duplicate index in row '" + line + "'");
        seen[k] = true;
        f.values[k] = v;
        ++count;
    }
    if (count != g.size())
        throw std::runtime_error("field CSV: expected " + std::to_string(g.size()) +
                                 " rows, got " + std::to_string(count));
    return f;
}

void write_energy_csv(std::ostream& os, std::span<const EnergyReport> rows) {
    os << "# energy v1\n";
    os << "t,E0,E1,E2_accum,alpha_min,alpha_max,E01,E02,E03,E11,E12,E13,E20\n";
    for (const auto& r : rows) {
        os << format_double(r.t) << ',' << format_double(r.E0) << ',' << format_double(r.E1)
           << ',' << format_double(r.E2_accum) << ',' << format_double(r.alpha_min) << ','
           << format_double(r.alpha_max) << ',' << format_double(r.E01) << ','
           << format_double(r.E02) << ',' << format_double(r.E03) << ','
           << format_double(r.E11) << ',' << format_double(r.E12) << ','
           << format_double(r.E13) << ',' << format_double(r.E20) << '\n';
    }
}

void write_field_file(const std::string& path, const Field& f) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_field_csv(os, f);
}

Field read_field_file(const std::string& path, const Grid& g) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open '" + path + "'");
    return read_field_csv(is, g);
}

}  // namespace acoustics
