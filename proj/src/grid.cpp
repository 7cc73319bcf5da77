#include "wpc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wpc {

Grid1D::Grid1D(double length, std::size_t interior_nodes)
    : length_(length), n_(interior_nodes), dx_(length / static_cast<double>(interior_nodes + 1)) {
    if (!(length > 0.0) || !std::isfinite(length)) throw SimError("grid length must be positive");
    if (interior_nodes < 2) throw SimError("grid needs at least 2 interior nodes");
}

double Grid1D::eigenvalue(int mode) const {
    const double s = std::sin(mode * std::numbers::pi * dx_ / (2.0 * length_));
    return 4.0 / (dx_ * dx_) * s * s;
}

template <class Tag>
Field<Tag>::Field(const Grid1D& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != extent(grid)) throw GridMismatch("field length does not match grid");
}

template <class Tag>
bool Field<Tag>::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

template class Field<NodeTag>;
template class Field<FaceTag>;

FaceField gradient_to_faces(const NodeField& u) {
    const Grid1D& g = u.grid();
    const std::size_t n = g.nodes();
    const double inv = 1.0 / g.dx();
    FaceField w(g);
    w[0] = u[0] * inv;
    for (std::size_t i = 1; i < n; ++i) w[i] = (u[i] - u[i - 1]) * inv;
    w[n] = -u[n - 1] * inv;
    return w;
}

NodeField divergence_from_faces(const FaceField& w) {
    const Grid1D& g = w.grid();
    const double inv = 1.0 / g.dx();
    NodeField d(g);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = (w[i + 1] - w[i]) * inv;
    return d;
}

NodeField laplacian_dirichlet(const NodeField& u) { return divergence_from_faces(gradient_to_faces(u)); }

template <class Tag>
Field<Tag> hadamard(const Field<Tag>& a, const Field<Tag>& b) {
    a.check(b);
    Field<Tag> out(a.grid());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

FaceField coefficient_to_faces(const NodeField& c) {
    const std::size_t n = c.size();
    FaceField w(c.grid());
    w[0] = c[0];
    for (std::size_t i = 1; i < n; ++i) w[i] = 0.5 * (c[i - 1] + c[i]);
    w[n] = c[n - 1];
    return w;
}

FaceField coefficient_gradient(const NodeField& c) {
    const std::size_t n = c.size();
    const double inv = 1.0 / c.grid().dx();
    FaceField w(c.grid());
    for (std::size_t i = 1; i < n; ++i) w[i] = (c[i] - c[i - 1]) * inv;
    return w;
}

NodeField faces_to_nodes(const FaceField& w) {
    NodeField u(w.grid());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = 0.5 * (w[i] + w[i + 1]);
    return u;
}

template <class Tag>
double l2_inner(const Field<Tag>& u, const Field<Tag>& v) {
    u.check(v);
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return u.grid().dx() * s;
}

template <class Tag>
double l2_norm(const Field<Tag>& u) {
    return std::sqrt(l2_inner(u, u));
}

template <class Tag>
double linf_norm(const Field<Tag>& u) {
    double m = 0.0;
    for (double v : u.values()) m = std::max(m, std::abs(v));
    return m;
}

template <class Tag>
double l3_norm(const Field<Tag>& u) {
    double s = 0.0;
    for (double v : u.values()) s += std::abs(v) * v * v;
    return std::cbrt(u.grid().dx() * s);
}

double h1_seminorm(const NodeField& u) { return l2_norm(gradient_to_faces(u)); }

template NodeField hadamard(const NodeField&, const NodeField&);
template FaceField hadamard(const FaceField&, const FaceField&);
template double l2_inner(const NodeField&, const NodeField&);
template double l2_inner(const FaceField&, const FaceField&);
template double l2_norm(const NodeField&);
template double l2_norm(const FaceField&);
template double linf_norm(const NodeField&);
template double linf_norm(const FaceField&);
template double l3_norm(const NodeField&);
template double l3_norm(const FaceField&);

NodeField solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                            std::span<const double> upper, const NodeField& rhs) {
    const std::size_t n = rhs.size();
    if (diag.size() != n || lower.size() != n || upper.size() != n) {
        throw GridMismatch("tridiagonal bands do not match right-hand side length");
    }
    auto row_scale = [&](std::size_t i) {
        double s = std::abs(diag[i]);
        if (i > 0) s = std::max(s, std::abs(lower[i]));
        if (i + 1 < n) s = std::max(s, std::abs(upper[i]));
        return s;
    };

    std::vector<double> c(n);
    NodeField x(rhs.grid());
    double pivot = diag[0];
    if (!(std::abs(pivot) >= 1e-14 * row_scale(0)) || pivot == 0.0) throw SingularSystem(0, pivot);
    c[0] = n > 1 ? upper[0] / pivot : 0.0;
    x[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = diag[i] - lower[i] * c[i - 1];
        if (!(std::abs(pivot) >= 1e-14 * row_scale(i)) || pivot == 0.0) throw SingularSystem(i, pivot);
        c[i] = i + 1 < n ? upper[i] / pivot : 0.0;
        x[i] = (rhs[i] - lower[i] * x[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
    return x;
}

} // namespace wpc
