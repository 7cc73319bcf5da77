#ifndef WPC_GRID_HPP
#define WPC_GRID_HPP

#include <cstddef>
#include <span>
#include <type_traits>
#include <vector>

#include "wpc/errors.hpp"

namespace wpc {

/// Uniform staggered grid on (0, L). Nodes x_j = j*dx (j = 1..N) carry p and Theta,
/// faces x_{j+1/2} = (j+1/2)*dx (j = 0..N) carry the heat flux q. Node values at x = 0 and
/// x = L are implicitly zero.
class Grid1D {
public:
    Grid1D(double length, std::size_t interior_nodes);

    double length() const { return length_; }
    std::size_t nodes() const { return n_; }
    std::size_t faces() const { return n_ + 1; }
    double dx() const { return dx_; }

    /// Coordinate of interior node i (0-based storage index, i.e. x_{i+1}).
    double node_x(std::size_t i) const { return static_cast<double>(i + 1) * dx_; }
    /// Coordinate of face i (x_{i+1/2}).
    double face_x(std::size_t i) const { return (static_cast<double>(i) + 0.5) * dx_; }

    /// Discrete Dirichlet-Laplacian eigenvalue (4/dx^2) sin^2(k pi dx / (2L)).
    double eigenvalue(int mode) const;

    bool operator==(const Grid1D&) const = default;

private:
    double length_;
    std::size_t n_;
    double dx_;
};

struct NodeTag {};
struct FaceTag {};

/// Grid-function value type. Tag separates node and face fields at compile time; the grid
/// is checked at run time.
template <class Tag>
class Field {
public:
    explicit Field(const Grid1D& grid, double value = 0.0)
        : grid_(grid), values_(extent(grid), value) {}
    Field(const Grid1D& grid, std::vector<double> values);

    template <class Fn>
    static Field from_function(const Grid1D& grid, Fn&& fn) {
        Field f(grid);
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = fn(f.x(i));
        return f;
    }

    static std::size_t extent(const Grid1D& g) {
        if constexpr (std::is_same_v<Tag, NodeTag>) return g.nodes();
        else return g.faces();
    }

    const Grid1D& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    double x(std::size_t i) const {
        if constexpr (std::is_same_v<Tag, NodeTag>) return grid_.node_x(i);
        else return grid_.face_x(i);
    }

    double& operator[](std::size_t i) { return values_[i]; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    Field& operator+=(const Field& o) {
        check(o);
        for (std::size_t i = 0; i < size(); ++i) values_[i] += o.values_[i];
        return *this;
    }
    Field& operator-=(const Field& o) {
        check(o);
        for (std::size_t i = 0; i < size(); ++i) values_[i] -= o.values_[i];
        return *this;
    }
    Field& operator*=(double s) {
        for (double& v : values_) v *= s;
        return *this;
    }

    friend Field operator+(Field a, const Field& b) { return a += b; }
    friend Field operator-(Field a, const Field& b) { return a -= b; }
    friend Field operator*(double s, Field a) { return a *= s; }
    friend Field operator*(Field a, double s) { return a *= s; }

    bool operator==(const Field& o) const { return grid_ == o.grid_ && values_ == o.values_; }

    bool all_finite() const;

    void check(const Field& o) const {
        if (!(grid_ == o.grid_)) throw GridMismatch("fields live on different grids");
    }

private:
    Grid1D grid_;
    std::vector<double> values_;
};

using NodeField = Field<NodeTag>;
using FaceField = Field<FaceTag>;

extern template class Field<NodeTag>;
extern template class Field<FaceTag>;

/// (u_{j+1} - u_j)/dx on every face, with u_0 = u_{N+1} = 0.
FaceField gradient_to_faces(const NodeField& u);
/// (w_{j+1/2} - w_{j-1/2})/dx at every node; the exact negative adjoint of gradient_to_faces.
NodeField divergence_from_faces(const FaceField& w);
/// Three-point Dirichlet Laplacian, computed as divergence(gradient(u)).
NodeField laplacian_dirichlet(const NodeField& u);

/// Pointwise product of two fields on the same grid.
template <class Tag>
Field<Tag> hadamard(const Field<Tag>& a, const Field<Tag>& b);

/// Arithmetic face average of a node coefficient; boundary faces take the adjacent node value.
FaceField coefficient_to_faces(const NodeField& c);
/// Face gradient of a node coefficient with zero gradient on the two boundary faces.
/// Used for coefficients (alpha, r) whose boundary values are not Dirichlet data.
FaceField coefficient_gradient(const NodeField& c);
/// Arithmetic average of the two faces adjacent to each node.
NodeField faces_to_nodes(const FaceField& w);

/// dx-weighted inner product (uniform weights on nodes and on faces).
template <class Tag>
double l2_inner(const Field<Tag>& u, const Field<Tag>& v);
template <class Tag>
double l2_norm(const Field<Tag>& u);
template <class Tag>
double linf_norm(const Field<Tag>& u);
/// (dx * sum |u|^3)^(1/3).
template <class Tag>
double l3_norm(const Field<Tag>& u);
double h1_seminorm(const NodeField& u);

/// Thomas algorithm. lower[0] and upper[n-1] are ignored. Throws SingularSystem when a pivot
/// is below 1e-14 times the scale of its row.
NodeField solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                            std::span<const double> upper, const NodeField& rhs);

} // namespace wpc

#endif
