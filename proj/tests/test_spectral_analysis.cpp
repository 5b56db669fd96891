#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "arspec/spectral_analysis.hpp"
#include "test_util.hpp"

using namespace arspec;

namespace {

WoldCoefficients geometric_wold(double ratio, int length) {
    std::vector<double> a;
    for (int k = 0; k <= length; ++k) a.push_back(std::pow(ratio, k));
    return WoldCoefficients(std::move(a));
}

}  // namespace

TEST_CASE("ma_truncation_spectrum closed forms") {
    const WoldCoefficients white({1.0});
    CHECK(ma_truncation_spectrum(white, 0, 0.17) == doctest::Approx(1.0));

    const WoldCoefficients ma1({1.0, 0.5});
    CHECK(ma_truncation_spectrum(ma1, 1, 0.0) == doctest::Approx(2.25));

    const WoldCoefficients geometric = geometric_wold(0.5, 40);
    CHECK(ma_truncation_spectrum(geometric, 3, 0.0) == doctest::Approx(3.515625).epsilon(1e-12));
    CHECK_THROWS_AS((void)ma_truncation_spectrum(ma1, 5, 0.0), std::invalid_argument);
}

TEST_CASE("predictor_spectrum closed forms") {
    SUBCASE("white noise has a zero predictor spectrum") {
        const CovarianceSequence covariance({1.0, 0.0, 0.0, 0.0});
        const ARPredictor fitted = levinson_durbin(covariance, 2).back();
        CHECK(predictor_spectrum(covariance, fitted, 0.0) == 0.0);
        CHECK(predictor_spectrum(covariance, fitted, 0.31) == 0.0);
    }
    SUBCASE("AR(1) at the origin") {
        const CovarianceSequence covariance = model_covariance(ProcessSpec::ar({0.5}), 64);
        const ARPredictor fitted = levinson_durbin(covariance, 1).back();
        CHECK(predictor_spectrum(covariance, fitted, 0.0) == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("MA(1) theta=0.5 at order 2") {
        const CovarianceSequence covariance = model_covariance(ProcessSpec::ma({0.5}), 48);
        const ARPredictor fitted = levinson_durbin(covariance, 2).back();
        CHECK(predictor_spectrum(covariance, fitted, 0.0) ==
              doctest::Approx(9.0 / 49.0).epsilon(1e-9));
    }
}

TEST_CASE("predictor_spectrum_origin avoids quadrature") {
    const CovarianceSequence ma1 = model_covariance(ProcessSpec::ma({0.5}), 48);
    const std::vector<ARPredictor> sweep = levinson_durbin(ma1, 40);

    const CovarianceSequence white({1.0, 0.0, 0.0});
    const ARPredictor zero = levinson_durbin(white, 2).back();
    CHECK(predictor_spectrum_origin(white, zero) == 0.0);

    CHECK(predictor_spectrum_origin(ma1, sweep[1]) == doctest::Approx(9.0 / 49.0).epsilon(1e-12));
    CHECK(predictor_spectrum_origin(ma1, sweep[39]) == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("tavc_true closed forms") {
    CHECK(tavc_true(CovarianceSequence({1.0, 0.0, 0.0})) == doctest::Approx(1.0));
    CHECK(tavc_true(model_covariance(ProcessSpec::ar({0.5}))) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(tavc_true(model_covariance(ProcessSpec::ma({0.5}))) == doctest::Approx(2.25));
}

TEST_CASE("tavc_ar_model closed forms and guard") {
    const CovarianceSequence ar1 = model_covariance(ProcessSpec::ar({0.5}), 64);
    CHECK(tavc_ar_model(levinson_durbin(ar1, 1).back()) == doctest::Approx(4.0).epsilon(1e-12));

    const CovarianceSequence ma1 = model_covariance(ProcessSpec::ma({0.5}), 48);
    const std::vector<ARPredictor> sweep = levinson_durbin(ma1, 40);
    CHECK(tavc_ar_model(sweep[1]) == doctest::Approx(85.0 / 84.0 * 49.0 / 25.0).epsilon(1e-9));
    CHECK(tavc_ar_model(sweep[39]) == doctest::Approx(2.25).epsilon(1e-6));

    const ARPredictor unit_root{1, {1.0}, 0.5, {1.0}};
    CHECK_THROWS_AS((void)tavc_ar_model(unit_root), NearUnitRootError);
}

TEST_CASE("ar_model_spectrum matches its origin value") {
    const CovarianceSequence ma1 = model_covariance(ProcessSpec::ma({0.5}), 16);
    for (const ARPredictor& fitted : levinson_durbin(ma1, 6)) {
        CHECK(ar_model_spectrum(fitted, 0.0) == doctest::Approx(tavc_ar_model(fitted)).epsilon(1e-12));
        CHECK(ar_model_spectrum(fitted, 0.25) > 0.0);
    }
    const ARPredictor ar1{1, {0.5}, 1.0, {0.5}};
    // 1 / |1 - 0.5 e^{-i pi}|^2 = 1 / 2.25
    CHECK(ar_model_spectrum(ar1, 0.5) == doctest::Approx(1.0 / 2.25).epsilon(1e-12));
}

TEST_CASE("l2 distances: Parseval and quadrature paths agree") {
    SUBCASE("identical inputs give zero") {
        const CovarianceSequence ma1 = model_covariance(ProcessSpec::ma({0.5}), 8);
        CHECK(l2_distance_parseval(ma1, ma1) == 0.0);
        const auto s = [&](double lambda) { return spectral_density(ma1, lambda); };
        CHECK(l2_distance_quadrature(s, s) == 0.0);
    }
    SUBCASE("finite MA truncation at its own order is exact") {
        const WoldCoefficients ma1({1.0, 0.5});
        const CovarianceSequence full = covariance_from_wold(ma1, 8);
        const CovarianceSequence trunc = covariance_from_wold(ma1.truncated(1), 8);
        CHECK(l2_distance_parseval(full, trunc) == 0.0);
    }
    SUBCASE("MA(1) against white noise: sqrt(0.5625) = 0.75 both ways") {
        const WoldCoefficients ma1({1.0, 0.5});
        const CovarianceSequence full = covariance_from_wold(ma1, 8);
        const CovarianceSequence flat = covariance_from_wold(ma1.truncated(0), 8);
        CHECK(l2_distance_parseval(full, flat) == doctest::Approx(0.75).epsilon(1e-12));
        const double quad = l2_distance_quadrature(
            [&](double lambda) { return spectral_density(full, lambda); },
            [&](double lambda) { return ma_truncation_spectrum(ma1, 0, lambda); });
        CHECK(quad == doctest::Approx(0.75).epsilon(1e-9));
    }
    SUBCASE("geometric truncation error decreases and the paths agree") {
        const WoldCoefficients wold = geometric_wold(0.5, 60);
        const CovarianceSequence full = covariance_from_wold(wold, 60);
        double previous = 10.0;
        for (int p = 1; p <= 30; p += 3) {
            const CovarianceSequence trunc = covariance_from_wold(wold.truncated(p), 60);
            const double parseval = l2_distance_parseval(full, trunc);
            CHECK(parseval < previous);
            previous = parseval;
            const double quad = l2_distance_quadrature(
                [&](double lambda) { return spectral_density(full, lambda); },
                [&](double lambda) { return ma_truncation_spectrum(wold, p, lambda); });
            CHECK(std::abs(parseval - quad) < 1e-7);
        }
        const CovarianceSequence trunc30 = covariance_from_wold(wold.truncated(30), 60);
        CHECK(l2_distance_parseval(full, trunc30) < 1e-5);
    }
    SUBCASE("quadrature grid must be at least 256") {
        CHECK_THROWS_AS((void)l2_distance_quadrature([](double) { return 1.0; },
                                                     [](double) { return 0.0; }, 128),
                        std::invalid_argument);
    }
}

TEST_CASE("MA truncation error obeys the tail bound 2 S sum_{k>p} |a_k|") {
    const WoldCoefficients wold = geometric_wold(0.5, 60);
    const CovarianceSequence full = covariance_from_wold(wold, 60);
    const double total = wold.l1_norm();
    for (int p = 1; p <= 30; ++p) {
        double tail = 0.0;
        for (int k = p + 1; k <= wold.max_index(); ++k) tail += std::abs(wold.at(k));
        const double bound = 2.0 * total * tail;
        const CovarianceSequence trunc = covariance_from_wold(wold.truncated(p), 60);
        CHECK(l2_distance_parseval(full, trunc) <= bound);
    }
}

TEST_CASE("predictor_covariance closed forms") {
    SUBCASE("white noise") {
        const CovarianceSequence covariance({1.0, 0.0, 0.0, 0.0, 0.0});
        const ARPredictor fitted = levinson_durbin(covariance, 2).back();
        CHECK(predictor_covariance(covariance, fitted, 0) == 0.0);
        CHECK(predictor_covariance(covariance, fitted, 2) == 0.0);
    }
    SUBCASE("AR(1) single-term case") {
        const CovarianceSequence covariance = model_covariance(ProcessSpec::ar({0.5}), 64);
        const ARPredictor fitted = levinson_durbin(covariance, 1).back();
        CHECK(predictor_covariance(covariance, fitted, 0) ==
              doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }
    SUBCASE("MA(1) theta=0.5 at p=2, k=0") {
        // Oracle value 5/21: confirmed both by the covariance expansion with
        // the closed-form coefficients and by the quadrature dual path below.
        const CovarianceSequence covariance = model_covariance(ProcessSpec::ma({0.5}), 48);
        const ARPredictor fitted = levinson_durbin(covariance, 2).back();
        CHECK(predictor_covariance(covariance, fitted, 0) ==
              doctest::Approx(5.0 / 21.0).epsilon(1e-5));
    }
    SUBCASE("prefix precondition") {
        const CovarianceSequence covariance = model_covariance(ProcessSpec::ma({0.5}), 8);
        const ARPredictor fitted = levinson_durbin(covariance, 4).back();
        CHECK_THROWS_AS((void)predictor_covariance(covariance, fitted, 5), std::invalid_argument);
    }
}

TEST_CASE("dual path: covariance form vs transfer-function form") {
    const std::vector<ProcessSpec> specs{ProcessSpec::ar({0.5}), ProcessSpec::ma({0.5}),
                                         ProcessSpec::arma({0.5}, {0.4})};
    for (const ProcessSpec& spec : specs) {
        const CovarianceSequence covariance = model_covariance(spec, 64);
        const std::vector<ARPredictor> sweep = levinson_durbin(covariance, 20);
        for (int p : {1, 2, 5, 10, 20}) {
            const ARPredictor& fitted = sweep[static_cast<std::size_t>(p) - 1];
            const auto transfer = [&](double lambda) {
                return predictor_spectrum(covariance, fitted, lambda);
            };
            for (int k = -5; k <= 5; ++k)
                CHECK(std::abs(predictor_covariance(covariance, fitted, k) -
                               covariance_from_spectral(transfer, k)) < 1e-8);
            for (int j = 0; j < 257; ++j) {
                const double lambda = -0.5 + (j + 0.5) / 257.0;
                CHECK(std::abs(predictor_spectrum(covariance, fitted, lambda) -
                               predictor_spectrum_covariance_form(covariance, fitted, lambda)) <
                      1e-8);
            }
        }
    }
}

TEST_CASE("model TAVC is exact for pure AR processes at p >= q") {
    std::mt19937_64 rng(314);
    for (int trial = 0; trial < 12; ++trial) {
        const int q = 1 + static_cast<int>(rng() % 4);
        const ProcessSpec spec =
            ProcessSpec::ar(testutil::random_stationary_ar(rng, q, 0.7));
        const CovarianceSequence covariance = model_covariance(spec);
        const double truth = tavc_true(covariance);
        const std::vector<ARPredictor> sweep = levinson_durbin(covariance, q + 6);
        for (int p = q; p <= q + 6; ++p) {
            const double model = tavc_ar_model(sweep[static_cast<std::size_t>(p) - 1]);
            CHECK(std::abs(model - truth) < 1e-9 * std::max(1.0, truth));
        }
    }
}

TEST_CASE("convergence_report rows") {
    SUBCASE("MA(1) theta=0.5 sweep values") {
        const std::vector<ConvergenceRow> rows =
            convergence_report(ProcessSpec::ma({0.5}), 3);
        REQUIRE(rows.size() == 3);
        CHECK(rows[0].sigma2_p == doctest::Approx(1.05).epsilon(1e-12));
        CHECK(rows[1].sigma2_p == doctest::Approx(1.0119047619047619).epsilon(1e-12));
        CHECK(rows[2].sigma2_p == doctest::Approx(1.0029411764705882).epsilon(1e-12));
        CHECK(rows[1].sum_b == doctest::Approx(2.0 / 7.0).epsilon(1e-12));
        CHECK(rows[1].s0_predictor == doctest::Approx(9.0 / 49.0).epsilon(1e-9));
        CHECK(rows[1].tavc_ar_model == doctest::Approx(1.9833333333333334).epsilon(1e-9));
        REQUIRE(rows[1].baxter_gap.has_value());
        CHECK(*rows[1].baxter_gap == doctest::Approx(1.0 / 12.0).epsilon(1e-9));
        REQUIRE(rows[0].l2_ma.has_value());
        CHECK(*rows[0].l2_ma == 0.0);  // truncation at p >= q is exact
    }
    SUBCASE("white noise sweep is all zeros and ones") {
        const std::vector<ConvergenceRow> rows =
            convergence_report(ProcessSpec::white_noise(), 3);
        for (const ConvergenceRow& row : rows) {
            CHECK(row.s0_predictor == 0.0);
            CHECK(row.tavc_ar_model == doctest::Approx(1.0));
            REQUIRE(row.baxter_gap.has_value());
            CHECK(*row.baxter_gap == 0.0);
        }
    }
    SUBCASE("AR(1) keeps its exact TAVC at every order") {
        const std::vector<ConvergenceRow> rows = convergence_report(ProcessSpec::ar({0.5}), 3);
        for (const ConvergenceRow& row : rows)
            CHECK(row.tavc_ar_model == doctest::Approx(4.0).epsilon(1e-9));
    }
    SUBCASE("AR-predictor L2 distance shrinks below 1e-4 by p = 40") {
        const std::vector<ConvergenceRow> rows = convergence_report(ProcessSpec::ma({0.5}), 40);
        REQUIRE(rows.size() == 40);
        double previous = *rows[4].l2_ar_predictor;
        for (int p = 6; p <= 40; ++p) {
            const double value = *rows[static_cast<std::size_t>(p) - 1].l2_ar_predictor;
            CHECK(value <= previous + 1e-15);
            previous = value;
        }
        CHECK(*rows[39].l2_ar_predictor < 1e-4);
    }
    SUBCASE("rows stay finite with the required signs") {
        std::mt19937_64 rng(161);
        for (int trial = 0; trial < 6; ++trial) {
            const ProcessSpec spec = testutil::random_stationary_spec(rng, 4);
            for (const ConvergenceRow& row : convergence_report(spec, 10)) {
                CHECK(std::isfinite(row.sigma2_p));
                CHECK(std::isfinite(row.sum_b));
                CHECK(row.s0_predictor >= 0.0);
                CHECK(row.tavc_ar_model > 0.0);
                REQUIRE(row.l2_ma.has_value());
                CHECK(std::isfinite(*row.l2_ma));
                REQUIRE(row.l2_ar_predictor.has_value());
                CHECK(std::isfinite(*row.l2_ar_predictor));
            }
        }
    }
    SUBCASE("non-invertible MA keeps its Wold columns but no AR limit") {
        // 1 + 2z has its root inside the unit circle, so the series
        // inversion defining the limit coefficients diverges.
        const std::vector<ConvergenceRow> rows = convergence_report(ProcessSpec::ma({2.0}), 3);
        for (const ConvergenceRow& row : rows) {
            REQUIRE(row.l2_ma.has_value());
            CHECK(std::isfinite(*row.l2_ma));
            CHECK_FALSE(row.l2_ar_predictor.has_value());
            CHECK_FALSE(row.baxter_gap.has_value());
            CHECK(std::isfinite(row.tavc_ar_model));
        }
    }
    SUBCASE("covariance-only specs fill what is computable") {
        const auto dir = std::filesystem::temp_directory_path();
        const auto csv = dir / "arspec_report_raw.csv";
        {
            std::ofstream out(csv);
            out << "0,1.25\n1,0.5\n2,0\n3,0\n4,0\n";
        }
        const ProcessSpec spec = ProcessSpec::raw_covariance(csv);
        const std::vector<ConvergenceRow> rows = convergence_report(spec, 2);
        REQUIRE(rows.size() == 2);
        CHECK(rows[1].sigma2_p == doctest::Approx(1.0119047619047619).epsilon(1e-12));
        CHECK_FALSE(rows[1].l2_ma.has_value());
        CHECK_FALSE(rows[1].l2_ar_predictor.has_value());
        CHECK_FALSE(rows[1].baxter_gap.has_value());
        CHECK_THROWS_AS((void)convergence_report(spec, 10), std::invalid_argument);
    }
    SUBCASE("invalid max_order") {
        CHECK_THROWS_AS((void)convergence_report(ProcessSpec::ma({0.5}), 0),
                        std::invalid_argument);
    }
}

TEST_CASE("convergence CSV serialization") {
    const std::vector<ConvergenceRow> rows = convergence_report(ProcessSpec::ma({0.5}), 2);
    std::ostringstream out;
    write_convergence_csv(out, rows);
    const std::string text = out.str();
    CHECK(text.rfind("p,sigma2_p,sum_b,s0_predictor,tavc_ar_model,l2_ma,l2_ar_predictor,baxter_gap\n",
                     0) == 0);
    // header + 2 rows, 8 fields each
    int lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    CHECK(lines == 3);

    // absent optionals serialize as empty cells
    ConvergenceRow bare;
    bare.p = 1;
    bare.sigma2_p = 0.5;
    bare.sum_b = 0.1;
    bare.s0_predictor = 0.2;
    bare.tavc_ar_model = 0.3;
    std::ostringstream sparse;
    write_convergence_csv(sparse, std::vector<ConvergenceRow>{bare});
    CHECK(sparse.str().find("1,0.5,0.1,0.2,0.3,,,\n") != std::string::npos);
}
