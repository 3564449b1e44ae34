#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cwmix/experiments.hpp"
#include "cwmix/model.hpp"
#include "cwmix/rng.hpp"
#include "cwmix/table.hpp"

using namespace cwmix;

namespace {

double as_double(const Cell& c) {
    if (std::holds_alternative<double>(c)) return std::get<double>(c);
    if (std::holds_alternative<std::int64_t>(c))
        return static_cast<double>(std::get<std::int64_t>(c));
    throw std::runtime_error("as_double: string cell");
}

int find_col(const ResultTable& t, const std::string& name) {
    for (size_t i = 0; i < t.columns.size(); ++i)
        if (t.columns[i] == name) return static_cast<int>(i);
    throw std::runtime_error("missing column " + name);
}

}  // namespace

TEST_CASE("drivers validate their specs") {
    ExperimentSpec spec;
    spec.n_list = {};
    CHECK_THROWS_AS(cutoff_profile(spec), std::invalid_argument);
    CHECK_THROWS_AS(lemma_checks(spec), std::invalid_argument);

    spec.n_list = {32};
    spec.beta = 1.0;
    CHECK_THROWS_AS(cutoff_profile(spec), std::invalid_argument);  // needs beta < 1
    spec.beta = 0.9;
    CHECK_THROWS_AS(critical_scaling(spec), std::invalid_argument);  // needs beta = 1
    CHECK_THROWS_AS(metastability_suite(spec), std::invalid_argument);  // needs beta > 1
    spec.beta = 0.5;
    spec.replicas = 0;
    CHECK_THROWS_AS(coupling_validation(spec), std::invalid_argument);  // needs replicas
    spec.window_eps = 0.6;
    CHECK_THROWS_AS(cutoff_profile(spec), std::invalid_argument);

    ExperimentSpec odd;
    odd.n_list = {33};
    odd.beta = 1.0;
    odd.replicas = 2;
    CHECK_THROWS_AS(critical_scaling(odd), std::invalid_argument);  // odd mc_n
}

TEST_CASE("results are reproducible and independent of worker count") {
    ExperimentSpec spec;
    spec.n_list = {60};
    spec.beta = 0.5;
    spec.seed = 9;
    spec.replicas = 40;
    spec.gammas = {-2, 0, 2};
    spec.workers = 1;
    const std::string once = to_csv(coupling_validation(spec));
    CHECK(to_csv(coupling_validation(spec)) == once);  // rerun
    spec.workers = 4;
    CHECK(to_csv(coupling_validation(spec)) == once);  // scheduling-independent

    ExperimentSpec lem;
    lem.n_list = {32};
    lem.workers = 1;
    const std::string lonce = to_csv(lemma_checks(lem));
    lem.workers = 3;
    CHECK(to_csv(lemma_checks(lem)) == lonce);
}

TEST_CASE("cutoff profile: sharp drop around the centering time") {
    ExperimentSpec spec;
    spec.n_list = {32, 64};
    spec.beta = 0.5;
    spec.gammas = {-10, 0, 10};
    const ResultTable t = cutoff_profile(spec);
    const int cg = find_col(t, "gamma");
    const int cd = find_col(t, "d");
    const int cw = find_col(t, "window_over_n");
    CHECK(t.rows.size() == 6);
    for (const auto& row : t.rows) {
        const double gamma = as_double(row[static_cast<size_t>(cg)]);
        const double d = as_double(row[static_cast<size_t>(cd)]);
        CHECK(as_double(row[static_cast<size_t>(cw)]) > 0.0);
        if (gamma <= -10) CHECK(d >= 0.9);
        if (gamma >= 10) CHECK(d <= 0.1);
    }
    CHECK(t.meta_json.find("window_ratio_band") != std::string::npos);
}

TEST_CASE("critical scaling: slope near 3/2 already at small sizes") {
    ExperimentSpec spec;
    spec.n_list = {16, 32, 64};
    spec.beta = 1.0;
    spec.replicas = 4;
    spec.mc_n = 16;
    spec.workers = 2;
    const ResultTable t = critical_scaling(spec);
    const double slope = as_double(t.rows.front()[static_cast<size_t>(find_col(t, "slope"))]);
    CHECK(slope >= 1.3);
    CHECK(slope <= 1.8);
    const int cens = find_col(t, "mc_censored");
    for (const auto& row : t.rows)
        CHECK(as_double(row[static_cast<size_t>(cens)]) <= 1.0);
}

TEST_CASE("metastability suite: scales behave at small sizes") {
    ExperimentSpec spec;
    spec.n_list = {32, 64};
    spec.beta = 1.5;
    const ResultTable t = metastability_suite(spec);
    const int ctm = find_col(t, "t_mix_over_nlogn");
    const int ccl = find_col(t, "climb_over_nlogn");
    const int clp = find_col(t, "log_phi");
    const int csl = find_col(t, "logphi_slope");
    CHECK(std::isnan(as_double(t.rows[0][static_cast<size_t>(csl)])));
    CHECK(as_double(t.rows[1][static_cast<size_t>(csl)]) < 0.0);
    double prev_logphi = 0;
    for (size_t i = 0; i < t.rows.size(); ++i) {
        CHECK(as_double(t.rows[i][static_cast<size_t>(ctm)]) > 0.0);
        CHECK(as_double(t.rows[i][static_cast<size_t>(ccl)]) > 0.0);
        const double lp = as_double(t.rows[i][static_cast<size_t>(clp)]);
        if (i > 0) CHECK(lp < prev_logphi);
        prev_logphi = lp;
    }
}

TEST_CASE("coupling validation: contraction margins hold at a fixed seed") {
    ExperimentSpec spec;
    spec.n_list = {60};
    spec.beta = 0.5;
    spec.seed = 1;
    spec.replicas = 60;
    spec.gammas = {-1, 1, 5};
    spec.workers = 2;
    const ResultTable t = coupling_validation(spec);
    const int ckind = find_col(t, "kind");
    const int cmargin = find_col(t, "margin");
    const int cvalue = find_col(t, "value");
    int contraction_rows = 0, tail_rows = 0;
    double prev_tail = 1.0;
    for (const auto& row : t.rows) {
        const std::string& kind = std::get<std::string>(row[static_cast<size_t>(ckind)]);
        if (kind == "grand_contraction") {
            ++contraction_rows;
            CHECK(as_double(row[static_cast<size_t>(cmargin)]) >= 0.0);
        } else {
            CHECK(kind == "meeting_tail");
            ++tail_rows;
            const double phat = as_double(row[static_cast<size_t>(cvalue)]);
            CHECK(phat >= 0.0);
            CHECK(phat <= 1.0);
            CHECK(phat <= prev_tail + 0.2);  // roughly decreasing in gamma
            prev_tail = phat;
        }
    }
    CHECK(contraction_rows == 3);  // t in {n, 2n, 4n}
    CHECK(tail_rows == 2);         // positive gammas only
}

TEST_CASE("lemma margins are non-negative up to float slack") {
    ExperimentSpec spec;
    spec.n_list = {32, 64};
    spec.workers = 2;
    const ResultTable t = lemma_checks(spec);
    const int cm = find_col(t, "margin");
    CHECK(t.rows.size() > 20);
    for (const auto& row : t.rows)
        CHECK(as_double(row[static_cast<size_t>(cm)]) >= -1e-10);
}

TEST_CASE("three-phase meeting coupling: determinism and censoring") {
    const ModelParams p{40, 0.5};
    RngStream a(5, 3), b(5, 3);
    const auto ta = magnetization_meeting_time(p, a, 100000);
    const auto tb = magnetization_meeting_time(p, b, 100000);
    REQUIRE(ta.has_value());
    CHECK(ta == tb);
    CHECK(*ta > 0);
    RngStream c(5, 3);
    CHECK(!magnetization_meeting_time(p, c, 1).has_value());
    RngStream d(5, 3);
    CHECK_THROWS_AS(magnetization_meeting_time({40, 1.0}, d, 10), std::invalid_argument);
}

TEST_CASE("crossing composite coupling: determinism and the even-n rule") {
    const ModelParams p{16, 1.0};
    RngStream a(6, 2), b(6, 2);
    const auto ta = composite_meeting_time(p, a, 1000000);
    const auto tb = composite_meeting_time(p, b, 1000000);
    REQUIRE(ta.has_value());
    CHECK(ta == tb);
    RngStream c(6, 2);
    CHECK_THROWS_AS(composite_meeting_time({15, 1.0}, c, 10), std::invalid_argument);
}

TEST_CASE("parallel fan-out covers every slot exactly once") {
    for (const int workers : {1, 3, 8}) {
        std::vector<int> hits(100, 0);
        parallel_for(100, workers, [&](int i) { hits[static_cast<size_t>(i)] += 1; });
        for (const int h : hits) CHECK(h == 1);
    }
    parallel_for(0, 4, [](int) { REQUIRE(false); });  // no work, no calls
}
