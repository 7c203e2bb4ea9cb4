#include "acoustics/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace acoustics {

Grid::Grid(int dim_, int n_, double length_) : dim(dim_), n(n_), length(length_) {
    if (dim != 1 && dim != 2) throw std::domain_error("dim must be 1 or 2");
    if (n < 3) throw std::domain_error("n must be >= 3");
    if (!(length > 0.0) || !std::isfinite(length))
        throw std::domain_error("length must be > 0");
    h = length / (n + 1);
}

Field Field::sample(const Grid& g, const std::function<double(double, double)>& f) {
    Field out(g);
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i) out.values[i] = f(g.coord(i), 0.0);
    } else {
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i)
                out.values[g.index(i, j)] = f(g.coord(i), g.coord(j));
    }
    return out;
}

namespace {

void check_same_grid(const Grid& a, const Grid& b) {
    if (!(a == b)) throw std::invalid_argument("fields live on different grids");
}

}  // namespace

Field operator+(const Field& a, const Field& b) {
    check_same_grid(a.grid, b.grid);
    Field out(a.grid);
    for (std::size_t k = 0; k < out.size(); ++k) out.values[k] = a.values[k] + b.values[k];
    return out;
}

Field operator-(const Field& a, const Field& b) {
    check_same_grid(a.grid, b.grid);
    Field out(a.grid);
    for (std::size_t k = 0; k < out.size(); ++k) out.values[k] = a.values[k] - b.values[k];
    return out;
}

Field operator*(double s, const Field& a) {
    Field out(a.grid);
    for (std::size_t k = 0; k < out.size(); ++k) out.values[k] = s * a.values[k];
    return out;
}

Field& operator+=(Field& a, const Field& b) {
    check_same_grid(a.grid, b.grid);
    for (std::size_t k = 0; k < a.size(); ++k) a.values[k] += b.values[k];
    return a;
}

void axpy(double s, const Field& x, Field& y) {
    check_same_grid(x.grid, y.grid);
    for (std::size_t k = 0; k < y.size(); ++k) y.values[k] += s * x.values[k];
}

Field laplacian(const Field& f) {
    const Grid& g = f.grid;
    const double ih2 = 1.0 / (g.h * g.h);
    Field out(g);
    if (g.dim == 1) {
        const int n = g.n;
        for (int i = 0; i < n; ++i) {
            const double left = i > 0 ? f.values[i - 1] : 0.0;
            const double right = i + 1 < n ? f.values[i + 1] : 0.0;
            out.values[i] = (left - 2.0 * f.values[i] + right) * ih2;
        }
    } else {
        const int n = g.n;
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                const std::size_t k = g.index(i, j);
                const double c = f.values[k];
                const double xl = i > 0 ? f.values[k - 1] : 0.0;
                const double xr = i + 1 < n ? f.values[k + 1] : 0.0;
                const double yl = j > 0 ? f.values[k - n] : 0.0;
                const double yr = j + 1 < n ? f.values[k + n] : 0.0;
                out.values[k] = (xl + xr + yl + yr - 4.0 * c) * ih2;
            }
        }
    }
    return out;
}

Field bilaplacian(const Field& f) { return laplacian(laplacian(f)); }

GradField gradient(const Field& f) {
    const Grid& g = f.grid;
    const double i2h = 1.0 / (2.0 * g.h);
    GradField out(g);
    if (g.dim == 1) {
        const int n = g.n;
        for (int i = 0; i < n; ++i) {
            const double left = i > 0 ? f.values[i - 1] : 0.0;
            const double right = i + 1 < n ? f.values[i + 1] : 0.0;
            out.comp[0][i] = (right - left) * i2h;
        }
    } else {
        const int n = g.n;
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                const std::size_t k = g.index(i, j);
                const double xl = i > 0 ? f.values[k - 1] : 0.0;
                const double xr = i + 1 < n ? f.values[k + 1] : 0.0;
                const double yl = j > 0 ? f.values[k - n] : 0.0;
                const double yr = j + 1 < n ? f.values[k + n] : 0.0;
                out.comp[0][k] = (xr - xl) * i2h;
                out.comp[1][k] = (yr - yl) * i2h;
            }
        }
    }
    return out;
}

Field grad_dot(const GradField& a, const GradField& b) {
    check_same_grid(a.grid, b.grid);
    Field out(a.grid);
    for (int d = 0; d < a.grid.dim; ++d)
        for (std::size_t k = 0; k < out.size(); ++k)
            out.values[k] += a.comp[d][k] * b.comp[d][k];
    return out;
}

double inner(const Field& f, const Field& g) {
    check_same_grid(f.grid, g.grid);
    double s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) s += f.values[k] * g.values[k];
    const double w = f.grid.dim == 1 ? f.grid.h : f.grid.h * f.grid.h;
    return w * s;
}

double norm_l2(const Field& f) { return std::sqrt(inner(f, f)); }

double inner_grad(const GradField& a, const GradField& b) {
    check_same_grid(a.grid, b.grid);
    double s = 0.0;
    for (int d = 0; d < a.grid.dim; ++d)
        for (std::size_t k = 0; k < a.comp[d].size(); ++k) s += a.comp[d][k] * b.comp[d][k];
    const double w = a.grid.dim == 1 ? a.grid.h : a.grid.h * a.grid.h;
    return w * s;
}

double sbp_grad_norm_sq(const Field& f) {
    const Grid& g = f.grid;
    const double ih2 = 1.0 / (g.h * g.h);
    double s = 0.0;
    if (g.dim == 1) {
        const int n = g.n;
        for (int face = 0; face <= n; ++face) {
            const double lo = face > 0 ? f.values[face - 1] : 0.0;
            const double hi = face < n ? f.values[face] : 0.0;
            const double d = hi - lo;
            s += d * d * ih2;
        }
    } else {
        const int n = g.n;
        for (int j = 0; j < n; ++j) {  // x-faces along each row
            for (int face = 0; face <= n; ++face) {
                const double lo = face > 0 ? f.values[g.index(face - 1, j)] : 0.0;
                const double hi = face < n ? f.values[g.index(face, j)] : 0.0;
                const double d = hi - lo;
                s += d * d * ih2;
            }
        }
        for (int i = 0; i < n; ++i) {  // y-faces along each column
            for (int face = 0; face <= n; ++face) {
                const double lo = face > 0 ? f.values[g.index(i, face - 1)] : 0.0;
                const double hi = face < n ? f.values[g.index(i, face)] : 0.0;
                const double d = hi - lo;
                s += d * d * ih2;
            }
        }
    }
    const double w = g.dim == 1 ? g.h : g.h * g.h;
    return w * s;
}

double field_min(const Field& f) {
    return *std::min_element(f.values.begin(), f.values.end());
}

double field_max(const Field& f) {
    return *std::max_element(f.values.begin(), f.values.end());
}

double stencil_eigenvalue_1d(const Grid& g) {
    const double x = M_PI * g.h / g.length;
    return 2.0 / (g.h * g.h) * (1.0 - std::cos(x));
}

}  // namespace acoustics
