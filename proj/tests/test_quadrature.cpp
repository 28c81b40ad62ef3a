#include "fracdiff/quadrature.hpp"

#include "support.hpp"

#include <cmath>
#include <numeric>

using namespace fracdiff;
using fracdiff::testing::close;

TEST_SUITE("quadrature") {

TEST_CASE("weights sum to the interval length") {
    for (std::size_t P : {2u, 3u, 8u, 64u, 128u}) {
        const auto q = build_quadrature(0.0, 1.0, P);
        CHECK(q.size() == P);
        const double sum = std::accumulate(q.weights.begin(), q.weights.end(), 0.0);
        CHECK(close(sum, 1.0, 1e-14));
    }
}

TEST_CASE("exact on polynomials up to degree 2P-1") {
    const auto q = build_quadrature(0.0, 1.0, 8);
    CHECK(close(q.integrate([](double g) { return g * g * g; }), 0.25, 1e-14));
    for (int d = 0; d <= 15; ++d) {
        const double got = q.integrate([d](double g) { return std::pow(g, d); });
        CHECK(close(got, 1.0 / (d + 1), 1e-13));
    }
}

TEST_CASE("smooth integrand on a shifted interval") {
    const auto q = build_quadrature(-2.0, 3.0, 64);
    const double got = q.integrate([](double g) { return std::exp(g); });
    CHECK(close(got, std::exp(3.0) - std::exp(-2.0), 1e-12));
}

TEST_CASE("nodes are symmetric and inside the interval") {
    const auto q = build_quadrature(-1.0, 1.0, 17);
    for (std::size_t n = 0; n < q.size(); ++n) {
        CHECK(q.nodes[n] > -1.0);
        CHECK(q.nodes[n] < 1.0);
        CHECK(close(q.nodes[n], -q.nodes[q.size() - 1 - n], 1e-14, 1e-15));
        CHECK(close(q.weights[n], q.weights[q.size() - 1 - n], 1e-14));
    }
}

TEST_CASE("invalid arguments") {
    CHECK_THROWS(build_quadrature(1.0, 1.0, 8));
    CHECK_THROWS(build_quadrature(2.0, 1.0, 8));
    CHECK_THROWS(build_quadrature(0.0, 1.0, 1));
}

}
