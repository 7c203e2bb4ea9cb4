#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace acoustics {

/// Uniform tensor grid on [0,L]^dim (dim 1 or 2), interior nodes only.
/// Node i (per axis) sits at (i+1)*h with h = L/(n+1); the boundary carries
/// homogeneous Dirichlet data for every evolved quantity, so boundary values
/// are never stored.
struct Grid {
    int dim = 1;
    int n = 3;            // interior points per axis, >= 3
    double length = 1.0;  // L
    double h = 0.25;      // L/(n+1)

    Grid() = default;
    Grid(int dim_, int n_, double length_);  // validates, throws std::domain_error

    std::size_t size() const {
        return dim == 1 ? static_cast<std::size_t>(n)
                        : static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    }
    double coord(int i) const { return (i + 1) * h; }
    std::size_t index(int i, int j = 0) const {
        return static_cast<std::size_t>(i) + static_cast<std::size_t>(n) * j;
    }

    friend bool operator==(const Grid&, const Grid&) = default;
};

/// Discrete scalar field over the interior nodes, lexicographic x-fastest.
struct Field {
    Grid grid;
    std::vector<double> values;

    Field() = default;
    explicit Field(const Grid& g) : grid(g), values(g.size(), 0.0) {}

    double& operator[](std::size_t k) { return values[k]; }
    double operator[](std::size_t k) const { return values[k]; }
    std::size_t size() const { return values.size(); }

    /// Samples f(x) (1D) or f(x,y) (2D) at the interior nodes.
    static Field sample(const Grid& g, const std::function<double(double, double)>& f);
};

/// dim gradient components over the interior nodes (central differences).
struct GradField {
    Grid grid;
    std::array<std::vector<double>, 2> comp;

    GradField() = default;
    explicit GradField(const Grid& g) : grid(g) {
        for (int d = 0; d < g.dim; ++d) comp[d].assign(g.size(), 0.0);
    }
};

// Elementwise arithmetic; fields must share a grid.
Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double s, const Field& a);
Field& operator+=(Field& a, const Field& b);
void axpy(double s, const Field& x, Field& y);  // y += s*x

/// Five-point (1D three-point) Dirichlet Laplacian, zero ghost values.
Field laplacian(const Field& f);

/// Exactly laplacian(laplacian(f)): the composition encodes the boundary
/// closure psi = 0, lap psi = 0 on the boundary with no extra choices.
Field bilaplacian(const Field& f);

/// Central-difference gradient, zero ghost values.
GradField gradient(const Field& f);

/// Pointwise dot product of two central gradients, as a Field.
Field grad_dot(const GradField& a, const GradField& b);

// Rectangle-rule inner products; boundary values vanish so no correction.
double inner(const Field& f, const Field& g);
double norm_l2(const Field& f);
double inner_grad(const GradField& a, const GradField& b);

/// Squared L2 norm of the forward one-sided (face) gradient, including both
/// boundary faces. Satisfies inner(laplacian(f), f) == -sbp_grad_norm_sq(f)
/// to round-off, the discrete summation-by-parts identity used by the
/// energy bookkeeping.
double sbp_grad_norm_sq(const Field& f);

/// min/max over nodes.
double field_min(const Field& f);
double field_max(const Field& f);

/// Smallest eigenvalue of the 1D stencil on this grid for mode k=1:
/// (2/h^2)(1 - cos(pi*h/L)); the dim-D Dirichlet ground eigenvalue is
/// dim times this value.
double stencil_eigenvalue_1d(const Grid& g);

}  // namespace acoustics
