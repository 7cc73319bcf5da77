#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "wpc/grid.hpp"

using namespace wpc;

TEST_SUITE("grid") {

TEST_CASE("grid geometry") {
    const Grid1D g(1.0, 3);
    CHECK(g.dx() == doctest::Approx(0.25));
    CHECK(g.nodes() == 3);
    CHECK(g.faces() == 4);
    CHECK(g.node_x(0) == doctest::Approx(0.25));
    CHECK(g.face_x(0) == doctest::Approx(0.125));
    CHECK(g.face_x(3) == doctest::Approx(0.875));
    CHECK_THROWS(Grid1D(1.0, 1));
    CHECK_THROWS(Grid1D(-1.0, 8));
}

TEST_CASE("fields from different grids never combine") {
    NodeField a(Grid1D(1.0, 8), 1.0);
    NodeField b(Grid1D(2.0, 8), 1.0);
    CHECK_THROWS_AS(a += b, GridMismatch);
    CHECK_THROWS_AS(l2_inner(a, b), GridMismatch);
}

TEST_CASE("gradient with Dirichlet closure") {
    const Grid1D g(1.0, 3);
    CHECK(linf_norm(gradient_to_faces(NodeField(g))) == 0.0);

    const NodeField x = NodeField::from_function(g, [](double s) { return s; });
    const FaceField grad = gradient_to_faces(x);
    CHECK(grad[0] == doctest::Approx(1.0));
    CHECK(grad[1] == doctest::Approx(1.0));
    CHECK(grad[2] == doctest::Approx(1.0));
    CHECK(grad[3] == doctest::Approx(-3.0));
}

TEST_CASE("gradient of a sine meets the Taylor bound") {
    const Grid1D g(1.0, 127);
    const FaceField grad = gradient_to_faces(oracle::sine(g));
    const FaceField exact = oracle::cosine_faces(g, 1, oracle::pi);
    const double bound = std::pow(oracle::pi, 3) * g.dx() * g.dx() / 24.0 * 1.1;
    CHECK(linf_norm(grad - exact) <= bound);
}

TEST_CASE("divergence examples") {
    const Grid1D g(1.0, 10);
    CHECK(linf_norm(divergence_from_faces(FaceField(g, 3.7))) <= 1e-12);
    const FaceField x = FaceField::from_function(g, [](double s) { return s; });
    const NodeField div = divergence_from_faces(x);
    for (std::size_t j = 0; j < div.size(); ++j) CHECK(div[j] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("summation by parts over random fields") {
    std::mt19937_64 rng(7);
    for (std::size_t n : {2u, 5u, 64u, 200u}) {
        const Grid1D g(1.7, n);
        for (int trial = 0; trial < 50; ++trial) {
            const auto w = oracle::random_field<FaceField>(g, rng);
            const auto v = oracle::random_field<NodeField>(g, rng);
            // Reference sums written out directly.
            double lhs = 0.0;
            for (std::size_t j = 0; j < n; ++j) lhs += g.dx() * (w[j + 1] - w[j]) / g.dx() * v[j];
            double rhs = 0.0;
            for (std::size_t j = 0; j <= n; ++j) {
                const double right = j < n ? v[j] : 0.0;
                const double left = j > 0 ? v[j - 1] : 0.0;
                rhs += g.dx() * w[j] * (right - left) / g.dx();
            }
            CHECK(std::abs(lhs + rhs) <= 1e-12 * l2_norm(w) * l2_norm(v));
            const double lib = l2_inner(divergence_from_faces(w), v) + l2_inner(w, gradient_to_faces(v));
            CHECK(std::abs(lib) <= 1e-12 * l2_norm(w) * l2_norm(v));
        }
    }
}

TEST_CASE("laplacian of a quadratic is exact on a dyadic grid") {
    const Grid1D g(1.0, 63);
    const NodeField u = NodeField::from_function(g, [](double x) { return x * (1.0 - x); });
    const NodeField lap = laplacian_dirichlet(u);
    for (std::size_t j = 0; j < lap.size(); ++j) CHECK(lap[j] == -2.0);
}

TEST_CASE("laplacian equals divergence of gradient bit for bit") {
    std::mt19937_64 rng(11);
    const Grid1D g(1.0, 37);
    const auto u = oracle::random_field<NodeField>(g, rng);
    CHECK(laplacian_dirichlet(u) == divergence_from_faces(gradient_to_faces(u)));
    CHECK(linf_norm(laplacian_dirichlet(NodeField(g))) == 0.0);
}

TEST_CASE("laplacian of a sine: truncation and eigenpair") {
    const Grid1D g(1.0, 127);
    const NodeField s = oracle::sine(g);
    const NodeField lap = laplacian_dirichlet(s);
    const double pi2 = oracle::pi * oracle::pi;
    CHECK(linf_norm(lap + pi2 * s) / (pi2 * linf_norm(s)) <= 1e-3);
    for (int k : {1, 3, 17, 127}) {
        const double lambda = oracle::discrete_eigenvalue(1.0, 127, k);
        CHECK(g.eigenvalue(k) == doctest::Approx(lambda).epsilon(1e-13));
        const NodeField sk = oracle::sine(g, k);
        CHECK(linf_norm(laplacian_dirichlet(sk) + lambda * sk) <= 1e-11 * lambda);
    }
}

TEST_CASE("operators are linear") {
    std::mt19937_64 rng(3);
    const Grid1D g(2.0, 50);
    const auto u = oracle::random_field<NodeField>(g, rng);
    const auto v = oracle::random_field<NodeField>(g, rng);
    const auto w = oracle::random_field<FaceField>(g, rng);
    const auto z = oracle::random_field<FaceField>(g, rng);
    const double a = 1.3, b = -0.7;
    CHECK(linf_norm(gradient_to_faces(a * u + b * v) - (a * gradient_to_faces(u) + b * gradient_to_faces(v))) <= 1e-12);
    CHECK(linf_norm(laplacian_dirichlet(a * u + b * v) - (a * laplacian_dirichlet(u) + b * laplacian_dirichlet(v))) <= 1e-10);
    CHECK(linf_norm(divergence_from_faces(a * w + b * z) - (a * divergence_from_faces(w) + b * divergence_from_faces(z))) <= 1e-12);
}

TEST_CASE("norms") {
    for (std::size_t n : {2u, 9u, 128u}) {
        const Grid1D g(1.0, n);
        CHECK(l2_norm(NodeField(g, 1.0)) * l2_norm(NodeField(g, 1.0)) ==
              doctest::Approx(static_cast<double>(n) / (n + 1)).epsilon(1e-14));
        const NodeField s = oracle::sine(g);
        CHECK(l2_inner(s, s) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(l2_inner(s, s) == doctest::Approx(l2_norm(s) * l2_norm(s)).epsilon(1e-15));
        // |grad_h sin|^2 = lambda_h / 2.
        CHECK(h1_seminorm(s) * h1_seminorm(s) ==
              doctest::Approx(oracle::discrete_eigenvalue(1.0, n, 1) / 2.0).epsilon(1e-12));
    }
    const Grid1D g(1.0, 4);
    NodeField u(g);
    u[2] = -3.0;
    CHECK(linf_norm(u) == 3.0);
    CHECK(l3_norm(u) == doctest::Approx(std::cbrt(g.dx() * 27.0)));
}

TEST_CASE("coefficient face helpers") {
    const Grid1D g(1.0, 3);
    const NodeField c(g, std::vector<double>{1.0, 2.0, 4.0});
    const FaceField avg = coefficient_to_faces(c);
    CHECK(avg[0] == 1.0);
    CHECK(avg[1] == 1.5);
    CHECK(avg[2] == 3.0);
    CHECK(avg[3] == 4.0);
    const FaceField grad = coefficient_gradient(c);
    CHECK(grad[0] == 0.0);
    CHECK(grad[1] == doctest::Approx(4.0));
    CHECK(grad[2] == doctest::Approx(8.0));
    CHECK(grad[3] == 0.0);
    const NodeField back = faces_to_nodes(FaceField(g, 2.0));
    CHECK(linf_norm(back - NodeField(g, 2.0)) == 0.0);
}

TEST_CASE("tridiagonal solver") {
    const Grid1D g(1.0, 63);
    const std::size_t n = g.nodes();
    std::mt19937_64 rng(5);
    const auto r = oracle::random_field<NodeField>(g, rng);
    std::vector<double> one(n, 1.0), zero(n, 0.0);
    CHECK(solve_tridiagonal(zero, one, zero, r) == r);

    // -dx^2 times the Dirichlet Laplacian, applied to x(1-x) and solved back.
    const NodeField u = NodeField::from_function(g, [](double x) { return x * (1.0 - x); });
    const NodeField rhs = -g.dx() * g.dx() * laplacian_dirichlet(u);
    std::vector<double> lower(n, -1.0), diag(n, 2.0), upper(n, -1.0);
    CHECK(linf_norm(solve_tridiagonal(lower, diag, upper, rhs) - u) <= 1e-10);

    std::vector<double> bad = one;
    bad[4] = 0.0;
    CHECK_THROWS_AS(solve_tridiagonal(zero, bad, zero, r), SingularSystem);
}

TEST_CASE("tridiagonal residual on random dominant systems") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const Grid1D g(1.0, 100);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> lo(100), di(100), up(100);
        for (std::size_t i = 0; i < 100; ++i) {
            lo[i] = u(rng);
            up[i] = u(rng);
            di[i] = 2.0 + std::abs(u(rng)) + std::abs(lo[i]) + std::abs(up[i]);
        }
        const auto b = oracle::random_field<NodeField>(g, rng);
        const NodeField x = solve_tridiagonal(lo, di, up, b);
        double res = 0.0;
        for (std::size_t i = 0; i < 100; ++i) {
            double ax = di[i] * x[i];
            if (i > 0) ax += lo[i] * x[i - 1];
            if (i < 99) ax += up[i] * x[i + 1];
            res = std::max(res, std::abs(ax - b[i]));
        }
        CHECK(res <= 1e-10 * linf_norm(b));
    }
}

} // TEST_SUITE
