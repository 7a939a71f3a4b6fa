#include <doctest.h>

#include <cmath>

#include "dfr/representations.hpp"
#include "testkit.hpp"

using namespace dfr;
using representations::Kind;

namespace {

dynamics::Trajectory make_traj(std::vector<linalg::Vector> states) {
    return dynamics::Trajectory{states.front().size(), std::move(states)};
}

dynamics::Trajectory random_traj(testkit::Rng& rng, std::size_t n, std::size_t t_len) {
    std::vector<linalg::Vector> states;
    states.emplace_back(n, 0.0);
    for (std::size_t k = 0; k < t_len; ++k) {
        linalg::Vector x(n);
        for (auto& v : x) v = rng.uniform(-1.0, 1.0);
        states.push_back(std::move(x));
    }
    return make_traj(std::move(states));
}

masking::MaskMatrix small_mask(std::size_t n_vars) {
    return masking::mask_matrix({3, {1, 0}}, {0, 0, 1}, n_vars);
}

std::vector<linalg::Vector> random_series(testkit::Rng& rng, std::size_t n_vars,
                                          std::size_t t_len) {
    std::vector<linalg::Vector> s(n_vars, linalg::Vector(t_len));
    for (auto& ch : s)
        for (auto& v : ch) v = rng.uniform(-1.0, 1.0);
    return s;
}

}  // namespace

TEST_CASE("lrs is the final state") {
    testkit::Rng rng{1};
    auto traj = random_traj(rng, 4, 6);
    auto rep = representations::lrs(traj);
    CHECK(rep.features == traj.states.back());
    CHECK_THROWS_AS(representations::lrs(make_traj({linalg::Vector(3, 0.0)})),
                    std::invalid_argument);
}

TEST_CASE("drs is the per-step slice x(1..T)") {
    testkit::Rng rng{2};
    auto traj = random_traj(rng, 4, 3);
    auto rep = representations::drs(traj);
    REQUIRE(rep.step_features.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) CHECK(rep.step_features[k] == traj.state(k + 1));
}

TEST_CASE("mrs_xpad layout and padding") {
    auto traj = make_traj({{0, 0}, {1, 2}, {3, 4}});
    auto rep = representations::mrs_xpad(traj, 3);
    CHECK(rep.features == linalg::Vector{1, 2, 3, 4, 0, 0});

    CHECK(representations::mrs_xpad(traj, 2).features == linalg::Vector{1, 2, 3, 4});
    CHECK_THROWS_WITH_AS(representations::mrs_xpad(traj, 1),
                         doctest::Contains("exceeds T_max"), std::invalid_argument);
}

TEST_CASE("mrs_upad equals running the zero-extended input") {
    testkit::Rng rng{3};
    auto mask = small_mask(2);
    dynamics::DfrParams params(0.3, 1.0, 0.25, 2, 10);
    auto series = random_series(rng, 2, 2);

    auto rep = representations::mrs_upad(series, mask, params, 4);
    REQUIRE(rep.features.size() == 4 * 10);

    auto extended = series;
    for (auto& ch : extended) ch.resize(4, 0.0);
    auto traj = dynamics::run(extended, mask, params);
    for (std::size_t k = 1; k <= 4; ++k)
        for (std::size_t i = 0; i < 10; ++i)
            CHECK(rep.features[(k - 1) * 10 + i] == traj.state(k)[i]);

    // the padded tail keeps evolving: it is not all zero
    bool tail_nonzero = false;
    for (std::size_t f = 2 * 10; f < 4 * 10; ++f)
        if (rep.features[f] != 0.0) tail_nonzero = true;
    CHECK(tail_nonzero);
}

TEST_CASE("mrs_upad at T = t_max matches mrs_xpad of the same run") {
    testkit::Rng rng{4};
    auto mask = small_mask(2);
    dynamics::DfrParams params(0.3, 1.0, 0.25, 2, 10);
    auto series = random_series(rng, 2, 3);
    auto traj = dynamics::run(series, mask, params);
    CHECK(representations::mrs_upad(series, mask, params, 3).features ==
          representations::mrs_xpad(traj, 3).features);
}

TEST_CASE("mrs representations of different T have identical length") {
    testkit::Rng rng{5};
    auto a = representations::mrs_xpad(random_traj(rng, 4, 3), 6);
    auto b = representations::mrs_xpad(random_traj(rng, 4, 6), 6);
    CHECK(a.features.size() == b.features.size());
}

TEST_CASE("oms matches the explicit pseudoinverse oracle") {
    testkit::Rng rng{6};
    for (int it = 0; it < 100; ++it) {
        const std::size_t n = 2 + rng.next() % 3, t_len = 3 + rng.next() % 5,
                          n_vars = 1 + rng.next() % 3;
        auto traj = random_traj(rng, n, t_len);
        auto series = random_series(rng, n_vars, t_len);
        const double lambda = rng.uniform(0.1, 2.0);

        auto rep = representations::oms(series, traj, lambda);
        REQUIRE(rep.features.size() == n_vars * (n + 1));

        linalg::Matrix u_plus(n_vars, t_len);
        for (std::size_t c = 0; c < n_vars; ++c)
            for (std::size_t k = 0; k < t_len; ++k) u_plus(c, k) = series[c][k];
        linalg::Matrix xprime(n + 1, t_len);
        for (std::size_t k = 0; k < t_len; ++k) {
            for (std::size_t i = 0; i < n; ++i) xprime(i, k) = traj.state(k)[i];
            xprime(n, k) = 1.0;
        }
        auto want = linalg::flatten(testkit::oracle_ridge(u_plus, xprime, lambda));
        CHECK(testkit::rel_error(rep.features, want) < 1e-8);
    }
}

TEST_CASE("rms matches the explicit pseudoinverse oracle") {
    testkit::Rng rng{7};
    for (int it = 0; it < 100; ++it) {
        const std::size_t n = 2 + rng.next() % 3, t_len = 3 + rng.next() % 5;
        auto traj = random_traj(rng, n, t_len);
        const double lambda = rng.uniform(0.1, 2.0);

        auto rep = representations::rms(traj, lambda);
        REQUIRE(rep.features.size() == n * (n + 1));

        linalg::Matrix x_plus(n, t_len), xprime(n + 1, t_len);
        for (std::size_t k = 0; k < t_len; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                x_plus(i, k) = traj.state(k + 1)[i];
                xprime(i, k) = traj.state(k)[i];
            }
            xprime(n, k) = 1.0;
        }
        auto want = linalg::flatten(testkit::oracle_ridge(x_plus, xprime, lambda));
        CHECK(testkit::rel_error(rep.features, want) < 1e-8);
    }
}

TEST_CASE("oms/rms ridge shrinkage and first-order optimality") {
    testkit::Rng rng{8};
    auto traj = random_traj(rng, 3, 6);
    auto series = random_series(rng, 2, 6);

    auto big = representations::oms(series, traj, 1e12);
    for (double v : big.features) CHECK(std::fabs(v) < 1e-6);

    // R′(X′X′ᵀ + λE) = A·X′ᵀ within 1e-9 relative
    const double lambda = 0.7;
    auto rep = representations::rms(traj, lambda);
    linalg::Matrix r = linalg::unflatten(rep.features, 3, 4);
    linalg::Matrix x_plus(3, 6), xprime(4, 6);
    for (std::size_t k = 0; k < 6; ++k) {
        for (std::size_t i = 0; i < 3; ++i) {
            x_plus(i, k) = traj.state(k + 1)[i];
            xprime(i, k) = traj.state(k)[i];
        }
        xprime(3, k) = 1.0;
    }
    auto gram = linalg::matmul(xprime, xprime.transpose());
    for (std::size_t i = 0; i < 4; ++i) gram(i, i) += lambda;
    CHECK(testkit::rel_error(linalg::matmul(r, gram).data(),
                             linalg::matmul(x_plus, xprime.transpose()).data()) < 1e-9);
}

TEST_CASE("rms of the zero trajectory is zero") {
    auto traj = make_traj({{0, 0}, {0, 0}, {0, 0}});
    for (double v : representations::rms(traj, 1.0).features) CHECK(v == 0.0);
}

TEST_CASE("dprr hand fixture") {
    auto traj = make_traj({{0, 0}, {1, 2}, {3, 4}});
    CHECK(representations::dprr(traj).features == linalg::Vector{3, 6, 4, 4, 8, 6});
}

TEST_CASE("dprr zero trajectory") {
    auto traj = make_traj({{0, 0}, {0, 0}});
    CHECK(representations::dprr(traj).features == linalg::Vector(6, 0.0));
}

TEST_CASE("dprr equals the triple-loop oracle") {
    testkit::Rng rng{9};
    for (int it = 0; it < 100; ++it) {
        const std::size_t n = 2 + rng.next() % 9, t_len = 1 + rng.next() % 20;
        auto traj = random_traj(rng, n, t_len);
        auto rep = representations::dprr(traj);
        CHECK(testkit::rel_error(rep.features, testkit::oracle_dprr(traj)) < 1e-12);
    }
}

TEST_CASE("unshifted Gram is symmetric, the shifted DPRR matrix is not") {
    testkit::Rng rng{10};
    auto traj = random_traj(rng, 3, 8);

    // self-check of the accumulation path: Σ x(k)x(k)ᵀ is symmetric
    linalg::Matrix gram(3, 3);
    for (std::size_t k = 1; k <= traj.length(); ++k)
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                gram(i, j) += traj.state(k)[i] * traj.state(k)[j];
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(gram(i, j) == gram(j, i));

    auto shifted = linalg::unflatten(representations::dprr(traj).features, 3, 4);
    bool asymmetric = false;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (shifted(i, j) != shifted(j, i)) asymmetric = true;
    CHECK(asymmetric);
}

TEST_CASE("feature counts match the kind formulas") {
    testkit::Rng rng{11};
    for (int it = 0; it < 20; ++it) {
        const std::size_t n = 2 + rng.next() % 6, t_len = 2 + rng.next() % 8,
                          n_vars = 1 + rng.next() % 3, t_max = t_len + rng.next() % 4;
        auto traj = random_traj(rng, n, t_len);
        auto series = random_series(rng, n_vars, t_len);
        CHECK(representations::lrs(traj).features.size() ==
              representations::feature_count(Kind::LRS, n, n_vars, t_max));
        CHECK(representations::mrs_xpad(traj, t_max).features.size() ==
              representations::feature_count(Kind::MRS_XPAD, n, n_vars, t_max));
        CHECK(representations::oms(series, traj, 1.0).features.size() ==
              representations::feature_count(Kind::OMS, n, n_vars, t_max));
        CHECK(representations::rms(traj, 1.0).features.size() ==
              representations::feature_count(Kind::RMS, n, n_vars, t_max));
        CHECK(representations::dprr(traj).features.size() ==
              representations::feature_count(Kind::DPRR, n, n_vars, t_max));
    }
}

TEST_CASE("published feature dimensions at N_x = 36") {
    CHECK(representations::feature_count(Kind::OMS, 36, 13, 0) == 481);
    CHECK(representations::feature_count(Kind::RMS, 36, 13, 0) == 1332);
    CHECK(representations::feature_count(Kind::DPRR, 36, 13, 0) == 1332);
}

TEST_CASE("kind names round-trip") {
    for (auto k : {Kind::LRS, Kind::DRS, Kind::MRS_UPAD, Kind::MRS_XPAD, Kind::OMS, Kind::RMS,
                   Kind::DPRR})
        CHECK(representations::kind_from_name(representations::kind_name(k)) == k);
    CHECK_THROWS_AS(representations::kind_from_name("BOGUS"), std::invalid_argument);
}
