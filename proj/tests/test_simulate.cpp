// SPDX-License-Identifier: MIT
#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "extremaldep/estimate.hpp"
#include "extremaldep/io.hpp"
#include "extremaldep/rng.hpp"
#include "extremaldep/simulate.hpp"

using namespace extremaldep;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const ModelSpec kThreeDep{ModelKind::three_dependent, 1, 1, 3};
const ModelSpec kMaxAr11{ModelKind::max_ar, 1, 1, 3};

SeriesConfig make_cfg(const ModelSpec& spec, long n, std::uint64_t seed,
                      MarginKind margin = MarginKind::unit_frechet) {
    SeriesConfig cfg;
    cfg.model = spec;
    cfg.margin = margin;
    cfg.n = n;
    cfg.seed = seed;
    return cfg;
}

// Autocorrelation machinery for indicator series; the variance inflation
// factor 1 + 2 sum rho_l^2 keeps bands honest for m-dependent series.
struct IndicatorStats {
    std::vector<char> ind;
    double p = 0.0;

    IndicatorStats(const SampleMatrix& series, int col, double level, bool below) {
        ind.resize(static_cast<std::size_t>(series.rows));
        for (long t = 0; t < series.rows; ++t) {
            bool hit = below ? series.at(t, col) <= level : series.at(t, col) > level;
            ind[static_cast<std::size_t>(t)] = hit ? 1 : 0;
            p += hit ? 1.0 : 0.0;
        }
        p /= static_cast<double>(series.rows);
    }

    [[nodiscard]] double corr(int lag) const {
        double cov = 0.0;
        auto m = static_cast<long>(ind.size()) - lag;
        for (long t = 0; t < m; ++t)
            cov += (ind[static_cast<std::size_t>(t)] - p) *
                   (ind[static_cast<std::size_t>(t + lag)] - p);
        return cov / (static_cast<double>(m) * p * (1.0 - p));
    }

    [[nodiscard]] double band(int max_lag, double z) const {
        double inflation = 1.0;
        for (int l = 1; l <= max_lag; ++l) {
            double r = corr(l);
            inflation += 2.0 * r * r;
        }
        return z * std::sqrt(inflation * p * (1.0 - p) / static_cast<double>(ind.size()));
    }
};

// Independent route to the switching construction's one-observation df:
// enumerate the 8 coin patterns; row (z1, z3, z2) with z_m = u_{m + j_m}.
double t_enum(const Margin& f, double x1, double x2, double x3) {
    const double inf = std::numeric_limits<double>::infinity();
    double total = 0.0;
    for (int j1 : {0, 1})
        for (int j2 : {0, 1})
            for (int j3 : {0, 1}) {
                double cap[4] = {inf, inf, inf, inf};
                cap[j1] = std::min(cap[j1], x1);
                cap[2 + j3] = std::min(cap[2 + j3], x2);
                cap[1 + j2] = std::min(cap[1 + j2], x3);
                double prob = 1.0;
                for (double c : cap) prob *= std::isfinite(c) ? f.cdf(c) : 1.0;
                total += prob;
            }
    return total / 8.0;
}

}  // namespace

TEST_CASE("rng basics") {
    auto a = stream_rng(7, 0);
    auto b = stream_rng(7, 0);
    auto c = stream_rng(7, 1);
    REQUIRE(a.next_u64() == b.next_u64());
    REQUIRE(stream_rng(7, 0).next_u64() != c.next_u64());
    REQUIRE(mix_seed(1, 2) == mix_seed(1, 2));
    REQUIRE(mix_seed(1, 2) != mix_seed(2, 1));

    auto rng = stream_rng(99, 0);
    const long n = 100000;
    double sum = 0.0;
    long heads = 0;
    for (long i = 0; i < n; ++i) {
        double u = rng.next_unit();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    auto coins = stream_rng(99, 1);
    for (long i = 0; i < n; ++i)
        if (coins.next_coin()) ++heads;
    REQUIRE_THAT(sum / static_cast<double>(n),
                 WithinAbs(0.5, 4.0 * std::sqrt(1.0 / 12.0 / static_cast<double>(n))));
    REQUIRE_THAT(static_cast<double>(heads) / static_cast<double>(n),
                 WithinAbs(0.5, 4.0 * std::sqrt(0.25 / static_cast<double>(n))));
}

TEST_CASE("generator determinism and structure") {
    SECTION("same seed, same bits; different seed, different bits") {
        auto cfg = make_cfg(kThreeDep, 200, 5);
        SampleMatrix m1 = gen_three_dependent_series(cfg);
        SampleMatrix m2 = gen_three_dependent_series(cfg);
        REQUIRE(m1.data == m2.data);
        cfg.seed = 6;
        SampleMatrix m3 = gen_three_dependent_series(cfg);
        REQUIRE(m1.data != m3.data);
        REQUIRE(m1.rows == 200);
        REQUIRE(m1.cols == 3);
        REQUIRE(m1.labels == std::vector<std::string>{"c1", "c2", "c3"});
    }

    SECTION("vector view shares the univariate driver stream") {
        auto cfg = make_cfg(kMaxAr11, 500, 11);
        SampleMatrix x = gen_max_ar_series(cfg);
        SampleMatrix v = gen_vector_series_ex31(3, 2, cfg);
        REQUIRE(v.cols == 5);
        for (long t = 0; t < 500; ++t) {
            REQUIRE(v.at(t, 0) == x.at(t, 0));
            REQUIRE(v.at(t, 1) == x.at(t, 0));
            REQUIRE(v.at(t, 2) == x.at(t, 0));
            REQUIRE(v.at(t, 3) == -x.at(t, 0));
            REQUIRE(v.at(t, 4) == -x.at(t, 0));
        }
    }

    SECTION("switching columns are time-shifted copies of column 1") {
        SampleMatrix m = gen_three_dependent_series(make_cfg(kThreeDep, 300, 13));
        for (long t = 0; t + 1 < 300; ++t) REQUIRE(m.at(t, 2) == m.at(t + 1, 0));
        for (long t = 0; t + 2 < 300; ++t) REQUIRE(m.at(t, 1) == m.at(t + 2, 0));
    }

    SECTION("iid sample: per-vector seeding makes prefixes stable") {
        auto cfg = make_cfg(kThreeDep, 1, 17);
        SampleMatrix small = gen_iid_associated(kThreeDep, 100, cfg);
        SampleMatrix big = gen_iid_associated(kThreeDep, 1000, cfg);
        for (long r = 0; r < 100; ++r)
            for (int c = 0; c < 3; ++c) REQUIRE(small.at(r, c) == big.at(r, c));

        SampleMatrix empty = gen_iid_associated(kThreeDep, 0, cfg);
        REQUIRE(empty.rows == 0);
        REQUIRE_THROWS_AS(gen_iid_associated(kThreeDep, -1, cfg), validation_error);

        SampleMatrix ar = gen_iid_associated(kMaxAr11, 50, make_cfg(kMaxAr11, 1, 19));
        for (long r = 0; r < 50; ++r) REQUIRE(ar.at(r, 1) == -ar.at(r, 0));
    }

    SECTION("config validation") {
        REQUIRE_THROWS_AS(gen_max_ar_series(make_cfg(kMaxAr11, 0, 1)), validation_error);
        SampleMatrix one = gen_max_ar_series(make_cfg(kMaxAr11, 1, 1));
        REQUIRE(one.rows == 1);
        REQUIRE_THROWS_AS(gen_vector_series_ex31(0, 1, make_cfg(kMaxAr11, 10, 1)),
                          validation_error);
    }

    SECTION("uniform margin stays in the unit interval") {
        SampleMatrix m =
            gen_three_dependent_series(make_cfg(kThreeDep, 1000, 23, MarginKind::standard_uniform));
        for (double v : m.data) {
            REQUIRE(v > 0.0);
            REQUIRE(v < 1.0);
        }
    }
}

TEST_CASE("moving-maximum series law") {
    const long n = 100000;
    SampleMatrix x = gen_max_ar_series(make_cfg(kMaxAr11, n, 31));
    Margin f = unit_frechet();

    SECTION("adjacent values tie with frequency 1/3") {
        long ties = 0;
        for (long t = 0; t + 1 < n; ++t)
            if (x.at(t, 0) == x.at(t + 1, 0)) ++ties;
        double freq = static_cast<double>(ties) / static_cast<double>(n - 1);
        // tie indicators are 2-dependent; crude inflation factor 2 on the band
        double band = 4.0 * std::sqrt(2.0 * (1.0 / 3.0) * (2.0 / 3.0) / static_cast<double>(n));
        REQUIRE_THAT(freq, WithinAbs(1.0 / 3.0, band));
    }

    SECTION("one-observation df is F^2") {
        double probe = f.quantile(0.9);
        IndicatorStats s(x, 0, probe, true);
        REQUIRE_THAT(s.p, WithinAbs(0.81, s.band(2, 4.0)));
    }
}

TEST_CASE("switching series law") {
    const long n = 100000;
    SampleMatrix m = gen_three_dependent_series(make_cfg(kThreeDep, n, 37));
    Margin f = unit_frechet();
    double probe = f.quantile(0.9);

    SECTION("each column has margin H") {
        for (int c = 0; c < 3; ++c) {
            IndicatorStats s(m, c, probe, true);
            REQUIRE_THAT(s.p, WithinAbs(0.9, s.band(3, 4.0)));
        }
    }

    SECTION("joint df probe matches the closed form") {
        std::vector<char> hit(static_cast<std::size_t>(n));
        double phat = 0.0;
        for (long t = 0; t < n; ++t) {
            bool h = m.at(t, 0) <= probe && m.at(t, 1) <= probe && m.at(t, 2) <= probe;
            hit[static_cast<std::size_t>(t)] = h ? 1 : 0;
            phat += h ? 1.0 : 0.0;
        }
        phat /= static_cast<double>(n);
        double target = vector_df(kThreeDep, MarginKind::unit_frechet,
                                  std::vector<double>{probe, probe, probe});
        // Bartlett band from the indicator series itself
        SampleMatrix ind = SampleMatrix::make(n, 1);
        for (long t = 0; t < n; ++t) ind.at(t, 0) = hit[static_cast<std::size_t>(t)];
        IndicatorStats s(ind, 0, 0.5, false);
        REQUIRE_THAT(phat, WithinAbs(target, s.band(3, 4.0)));
    }

    SECTION("two halves agree (stationarity smoke test)") {
        IndicatorStats s(m, 0, probe, true);
        long half = n / 2;
        double p1 = 0.0, p2 = 0.0;
        for (long t = 0; t < half; ++t) p1 += s.ind[static_cast<std::size_t>(t)];
        for (long t = half; t < n; ++t) p2 += s.ind[static_cast<std::size_t>(t)];
        p1 /= static_cast<double>(half);
        p2 /= static_cast<double>(n - half);
        double band = 2.0 * s.band(3, 4.0);  // both halves fluctuate
        REQUIRE_THAT(p1 - p2, WithinAbs(0.0, band));
    }
}

TEST_CASE("iid sample matches the one-observation df") {
    const long n = 100000;
    Margin f = unit_frechet();

    SECTION("no serial dependence left") {
        SampleMatrix m = gen_iid_associated(kThreeDep, n, make_cfg(kThreeDep, 1, 41));
        IndicatorStats s(m, 0, f.quantile(0.5), true);
        REQUIRE_THAT(s.corr(1), WithinAbs(0.0, 4.0 / std::sqrt(static_cast<double>(n))));
    }

    SECTION("empirical df equals vector_df at probe points") {
        std::vector<ModelSpec> specs{kThreeDep, kMaxAr11, ModelSpec{ModelKind::iid_product, 1, 1, 3}};
        std::uint64_t seed = 43;
        for (const auto& spec : specs) {
            SampleMatrix m = gen_iid_associated(spec, n, make_cfg(spec, 1, seed++));
            auto margins = series_margins(spec, MarginKind::unit_frechet);
            for (double q : {0.6, 0.9}) {
                std::vector<double> probe;
                for (const auto& mg : margins) probe.push_back(mg.quantile(q));
                long hits = 0;
                for (long r = 0; r < n; ++r) {
                    bool ok = true;
                    for (int c = 0; c < m.cols; ++c)
                        if (m.at(r, c) > probe[static_cast<std::size_t>(c)]) ok = false;
                    if (ok) ++hits;
                }
                double phat = static_cast<double>(hits) / static_cast<double>(n);
                double target = vector_df(spec, MarginKind::unit_frechet, probe);
                double band = 4.0 * std::sqrt(target * (1.0 - target) / static_cast<double>(n));
                INFO(kind_name(spec.kind) << " q=" << q);
                REQUIRE_THAT(phat, WithinAbs(target, band));
            }
        }
    }
}

TEST_CASE("one-observation df closed forms") {
    Margin f = unit_frechet();

    SECTION("switching df equals the 8-pattern enumeration") {
        auto rng = stream_rng(47, 0);
        for (MarginKind kind : {MarginKind::unit_frechet, MarginKind::standard_uniform}) {
            Margin base = base_margin(kind);
            for (int i = 0; i < 500; ++i) {
                std::vector<double> x(3);
                for (double& v : x) v = base.quantile(0.05 + 0.9 * rng.next_unit());
                double got = vector_df(kThreeDep, kind, x);
                double want = t_enum(base, x[0], x[1], x[2]);
                REQUIRE_THAT(got, WithinAbs(want, 1e-12));
            }
        }
    }

    SECTION("moving-maximum df by hand") {
        // P(X <= u, -X <= l) = F(u)^2 - F(-l)^2
        std::vector<double> x{1.0, -0.5};
        double want = std::exp(-2.0) - std::exp(-4.0);
        REQUIRE_THAT(vector_df(kMaxAr11, MarginKind::unit_frechet, x), WithinRel(want, 1e-12));

        // repeated coordinates take the min within each block
        ModelSpec ar21{ModelKind::max_ar, 2, 1, 0};
        std::vector<double> y{2.0, 1.0, -0.5};
        REQUIRE_THAT(vector_df(ar21, MarginKind::unit_frechet, y), WithinRel(want, 1e-12));

        // incompatible region has probability zero
        std::vector<double> z{0.3, -10.0};
        REQUIRE(vector_df(kMaxAr11, MarginKind::unit_frechet, z) == 0.0);
    }

    SECTION("dropping coordinates recovers margins") {
        const double inf = std::numeric_limits<double>::infinity();
        double x = 1.7;
        REQUIRE_THAT(vector_df(kThreeDep, MarginKind::unit_frechet,
                               std::vector<double>{inf, x, inf}),
                     WithinRel(f.cdf(x), 1e-14));
        REQUIRE_THAT(vector_df(kMaxAr11, MarginKind::unit_frechet,
                               std::vector<double>{inf, -x}),
                     WithinRel(1.0 - std::exp(-2.0 / x), 1e-12));
    }

    SECTION("diagonal equals the row-maximum margin") {
        Margin w = switching_rowmax(f);
        for (double x : {0.4, 1.0, 3.0, 20.0})
            REQUIRE_THAT(vector_df(kThreeDep, MarginKind::unit_frechet,
                                   std::vector<double>{x, x, x}),
                         WithinRel(w.cdf(x), 1e-14));
    }

    SECTION("independent product") {
        ModelSpec iid{ModelKind::iid_product, 1, 1, 3};
        std::vector<double> x{1.0, 2.0, 3.0};
        double want = f.cdf(1.0) * f.cdf(2.0) * f.cdf(3.0);
        REQUIRE_THAT(vector_df(iid, MarginKind::unit_frechet, x), WithinRel(want, 1e-14));
    }

    SECTION("dimension mismatch") {
        REQUIRE_THROWS_AS(vector_df(kThreeDep, MarginKind::unit_frechet,
                                    std::vector<double>{1.0, 2.0}),
                          validation_error);
    }
}

TEST_CASE("row maximum view") {
    SampleMatrix m = SampleMatrix::make(2, 3);
    m.at(0, 0) = 1.0; m.at(0, 1) = 5.0; m.at(0, 2) = 3.0;
    m.at(1, 0) = -2.0; m.at(1, 1) = -7.0; m.at(1, 2) = -1.0;
    SampleMatrix w = row_max(m);
    REQUIRE(w.cols == 1);
    REQUIRE(w.labels[0] == "rowmax");
    REQUIRE(w.at(0, 0) == 5.0);
    REQUIRE(w.at(1, 0) == -1.0);

    REQUIRE_THROWS_AS(row_max(SampleMatrix{}), validation_error);

    // with positive maxima and negative minima, the row max is the X series
    auto cfg = make_cfg(kMaxAr11, 200, 53);
    SampleMatrix v = gen_vector_series_ex31(1, 1, cfg);
    SampleMatrix x = gen_max_ar_series(cfg);
    SampleMatrix vr = row_max(v);
    for (long t = 0; t < 200; ++t) REQUIRE(vr.at(t, 0) == x.at(t, 0));
}

TEST_CASE("stationary margins per component") {
    ModelSpec ar{ModelKind::max_ar, 2, 1, 0};
    auto margins = series_margins(ar, MarginKind::unit_frechet);
    REQUIRE(margins.size() == 3);
    REQUIRE_THAT(margins[0].cdf(1.0), WithinRel(std::exp(-2.0), 1e-14));
    REQUIRE_THAT(margins[1].cdf(1.0), WithinRel(std::exp(-2.0), 1e-14));
    REQUIRE_THAT(margins[2].cdf(-1.0), WithinRel(1.0 - std::exp(-2.0), 1e-14));

    auto td = series_margins(kThreeDep, MarginKind::standard_uniform);
    REQUIRE(td.size() == 3);
    REQUIRE(td[0].cdf(0.42) == 0.42);

    ModelSpec iid{ModelKind::iid_product, 1, 1, 4};
    REQUIRE(series_margins(iid, MarginKind::unit_frechet).size() == 4);
}

TEST_CASE("csv round trip") {
    std::string path = "test_roundtrip.csv";
    SampleMatrix m = SampleMatrix::make(3, 2);
    m.at(0, 0) = 1.5; m.at(0, 1) = -2.25;
    m.at(1, 0) = 1e-17; m.at(1, 1) = 123456789.123456789;
    m.at(2, 0) = -0.0; m.at(2, 1) = 3.141592653589793;
    write_csv(path, m);
    SampleMatrix r = read_csv(path);
    REQUIRE(r.rows == 3);
    REQUIRE(r.cols == 2);
    REQUIRE(r.labels == m.labels);
    REQUIRE(r.data == m.data);
    std::remove(path.c_str());

    SECTION("errors") {
        REQUIRE_THROWS_AS(read_csv("does_not_exist.csv"), validation_error);
        {
            std::ofstream out("bad_header.csv");
            out << "x,c1\n1,2\n";
        }
        REQUIRE_THROWS_AS(read_csv("bad_header.csv"), validation_error);
        std::remove("bad_header.csv");
        {
            std::ofstream out("jagged.csv");
            out << "t,c1,c2\n1,2.0\n";
        }
        REQUIRE_THROWS_AS(read_csv("jagged.csv"), validation_error);
        std::remove("jagged.csv");
    }
}
