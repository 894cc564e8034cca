#include "gscale/bench.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "gscale/loctest.hpp"
#include "gscale/parallel.hpp"

namespace gscale::bench {

using scaletest::SampleData;
using scaletest::Stage1;
using simgen::Margin;

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return Rng::substream(seed, index).next_u64();
}

double CellRates::se(const std::string& tag) const {
    auto it = rate.find(tag);
    if (it == rate.end() || replicates == 0) return 0.0;
    return std::sqrt(it->second * (1.0 - it->second) / replicates);
}

namespace {

constexpr double kAlpha = 0.05;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct RejectionCounter {
    std::vector<std::string> tags;
    std::vector<std::vector<std::uint8_t>> reject;  // [rep][tag]: 0 no, 1 yes, 2 error

    RejectionCounter(std::vector<std::string> t, int reps)
        : tags(std::move(t)), reject(reps, std::vector<std::uint8_t>(tags.size(), 0)) {}

    CellRates reduce() const {
        CellRates out;
        out.replicates = static_cast<int>(reject.size());
        for (std::size_t j = 0; j < tags.size(); ++j) {
            int hits = 0, errs = 0;
            for (const auto& row : reject) {
                if (row[j] == 1) ++hits;
                if (row[j] == 2) ++errs;
            }
            out.rate[tags[j]] = static_cast<double>(hits) / out.replicates;
            out.failures[tags[j]] = errs;
        }
        return out;
    }
};

}  // namespace

CellRates run_model1_cell(int n1, int n2, Margin margin, std::array<double, 2> sigma,
                          int replicates, std::uint64_t seed) {
    const std::vector<std::string> tags{"Lev_OLS", "Lev_LAD", "TW_OLS",
                                        "TW_LAD",  "gS_OLS",  "gS_LAD"};
    RejectionCounter counter(tags, replicates);
    parallel_for(replicates, [&](std::int64_t rep) {
        simgen::Model1Config cfg;
        cfg.n1 = n1;
        cfg.n2 = n2;
        cfg.sigma = sigma;
        cfg.margin = margin;
        cfg.seed = derive_seed(seed, static_cast<std::uint64_t>(rep));
        auto sim = simgen::gen_model1(cfg);
        auto& row = counter.reject[rep];
        auto run = [&](std::size_t j, auto&& fn) {
            try {
                row[j] = fn() < kAlpha ? 1 : 0;
            } catch (const Error&) {
                row[j] = 2;
            }
        };
        const SampleData& data = sim.sample;
        run(0, [&] { return scaletest::levene_classic(data, Stage1::OLS, true).p_value; });
        run(1, [&] { return scaletest::levene_classic(data, Stage1::LAD, true).p_value; });
        run(2, [&] { return scaletest::tw_test(data, Stage1::OLS).p_value; });
        run(3, [&] { return scaletest::tw_test(data, Stage1::LAD).p_value; });
        run(4, [&] { return scaletest::gs_test(data, Stage1::OLS).p_value; });
        run(5, [&] { return scaletest::gs_test(data, Stage1::LAD).p_value; });
    });
    return counter.reduce();
}

CellRates run_model2_cell(double maf, int n_pairs, Margin margin,
                          std::array<double, 3> sigma, double uncertainty_a,
                          int replicates, std::uint64_t seed) {
    const std::vector<std::string> tags{"gS_LAD", "TW_LAD", "gS_LAD_BG", "TW_LAD_BG"};
    RejectionCounter counter(tags, replicates);
    parallel_for(replicates, [&](std::int64_t rep) {
        simgen::Model2Config cfg;
        cfg.n_pairs = n_pairs;
        cfg.maf = maf;
        cfg.sigma = sigma;
        cfg.margin = margin;
        cfg.uncertainty_a = uncertainty_a;
        cfg.seed = derive_seed(seed, static_cast<std::uint64_t>(rep));
        auto& row = counter.reject[rep];
        auto run = [&](std::size_t j, auto&& fn) {
            try {
                row[j] = fn() < kAlpha ? 1 : 0;
            } catch (const Error&) {
                row[j] = 2;
            }
        };
        try {
            auto sim = simgen::gen_model2(cfg);
            const SampleData& prob = sim.sample;
            SampleData bg{prob.y, *sim.best_guess_design, prob.clusters};
            run(0, [&] { return scaletest::gs_test(prob, Stage1::LAD).p_value; });
            run(1, [&] { return scaletest::tw_test(prob, Stage1::LAD).p_value; });
            run(2, [&] { return scaletest::gs_test(bg, Stage1::LAD).p_value; });
            run(3, [&] { return scaletest::tw_test(bg, Stage1::LAD).p_value; });
        } catch (const Error&) {
            for (auto& v : row) v = 2;  // monomorphic draw
        }
    });
    return counter.reduce();
}

std::vector<JointNullRep> run_model1_joint_null(int n1, int n2, Margin margin,
                                                int replicates, std::uint64_t seed) {
    std::vector<JointNullRep> out(replicates);
    parallel_for(replicates, [&](std::int64_t rep) {
        simgen::Model1Config cfg;
        cfg.n1 = n1;
        cfg.n2 = n2;
        cfg.margin = margin;
        cfg.seed = derive_seed(seed, static_cast<std::uint64_t>(rep));
        auto sim = simgen::gen_model1(cfg);
        auto joint = loctest::gjls_test(sim.sample, Stage1::LAD);
        out[rep] = {joint.p_location, joint.p_scale, joint.w_f, joint.p_joint};
    });
    return out;
}

void write_table(const Table& t, std::ostream& os) {
    for (std::size_t j = 0; j < t.header.size(); ++j)
        os << (j ? "\t" : "") << t.header[j];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "\t" : "") << row[j];
        os << '\n';
    }
}

TableId table_from_name(const std::string& s) {
    if (s == "T1") return TableId::T1;
    if (s == "T2") return TableId::T2;
    if (s == "T3") return TableId::T3;
    if (s == "T4") return TableId::T4;
    if (s == "releff" || s == "relative-efficiency") return TableId::RelEff;
    throw ConfigError("unknown table '" + s + "' (T1|T2|T3|T4|releff)");
}

namespace {

const std::array<Margin, 3> kMargins{Margin::Gaussian, Margin::T4, Margin::ChiSq4};

void append_rates(std::vector<std::string>& row, const CellRates& rates,
                  const std::vector<std::string>& tags) {
    for (const auto& tag : tags) {
        row.push_back(fmt(rates.rate.at(tag)));
        row.push_back(fmt(rates.se(tag)));
    }
}

// power grids use group variances (1, 1.5, 2)
std::array<double, 3> power_sigma() {
    return {1.0, std::sqrt(1.5), std::sqrt(2.0)};
}

}  // namespace

Table run_table1(int replicates, std::uint64_t seed) {
    const std::vector<std::pair<int, int>> sizes{{20, 20}, {5, 5}, {10, 20}, {5, 10}};
    const std::vector<std::string> tags{"Lev_OLS", "Lev_LAD", "TW_OLS",
                                        "TW_LAD",  "gS_OLS",  "gS_LAD"};
    Table t;
    t.header = {"margin", "n1", "n2"};
    for (const auto& tag : tags) {
        t.header.push_back(tag);
        t.header.push_back(tag + "_se");
    }
    std::uint64_t cell = 0;
    for (Margin m : kMargins)
        for (auto [n1, n2] : sizes) {
            auto rates = run_model1_cell(n1, n2, m, {1.0, 1.0}, replicates,
                                         derive_seed(seed, cell++));
            std::vector<std::string> row{simgen::margin_name(m), std::to_string(n1),
                                         std::to_string(n2)};
            append_rates(row, rates, tags);
            t.rows.push_back(std::move(row));
        }
    return t;
}

namespace {

Table model2_grid(int replicates, std::uint64_t seed, double uncertainty_a,
                  std::array<double, 3> sigma, const std::vector<std::string>& tags) {
    const std::vector<double> mafs{0.1, 0.2};
    const std::vector<int> pair_counts{20, 50, 100, 500, 1000};
    Table t;
    t.header = {"margin", "maf", "n_pairs"};
    for (const auto& tag : tags) {
        t.header.push_back(tag);
        t.header.push_back(tag + "_se");
    }
    std::uint64_t cell = 0;
    for (Margin m : kMargins)
        for (double maf : mafs)
            for (int np : pair_counts) {
                auto rates = run_model2_cell(maf, np, m, sigma, uncertainty_a,
                                             replicates, derive_seed(seed, cell++));
                std::vector<std::string> row{simgen::margin_name(m), fmt(maf),
                                             std::to_string(np)};
                append_rates(row, rates, tags);
                t.rows.push_back(std::move(row));
            }
    return t;
}

}  // namespace

Table run_table2(int replicates, std::uint64_t seed) {
    return model2_grid(replicates, seed, 1.0, {1.0, 1.0, 1.0}, {"TW_LAD", "gS_LAD"});
}

Table run_table3(int replicates, std::uint64_t seed) {
    return model2_grid(replicates, seed, 0.7, {1.0, 1.0, 1.0},
                       {"TW_LAD_BG", "TW_LAD", "gS_LAD_BG", "gS_LAD"});
}

Table run_table4(int replicates, std::uint64_t seed) {
    return model2_grid(replicates, seed, 0.7, power_sigma(), {"gS_LAD_BG", "gS_LAD"});
}

Table run_releff(int replicates, std::uint64_t seed) {
    struct Panel {
        const char* name;
        double maf;
        std::array<double, 3> sigma;
    };
    const std::array<double, 3> up = power_sigma();
    const std::array<double, 3> down{up[2], up[1], up[0]};
    const std::vector<Panel> panels{{"a", 0.1, up}, {"b", 0.1, down},
                                    {"c", 0.2, up}, {"d", 0.2, down}};
    const std::vector<double> a_grid{1.0, 0.9, 0.8, 0.7, 0.6, 0.5};

    Table t;
    t.header = {"panel", "maf", "a", "power_gS_LAD_BG", "power_gS_LAD", "releff"};
    std::uint64_t cell = 0;
    for (const auto& panel : panels)
        for (double a : a_grid) {
            auto rates = run_model2_cell(panel.maf, 500, Margin::Gaussian, panel.sigma,
                                         a, replicates, derive_seed(seed, cell++));
            double pw = rates.rate.at("gS_LAD");
            double pw_bg = rates.rate.at("gS_LAD_BG");
            double ratio = pw_bg > 0.0 ? pw / pw_bg : 1.0;
            t.rows.push_back({panel.name, fmt(panel.maf), fmt(a), fmt(pw_bg), fmt(pw),
                              fmt(ratio)});
        }
    return t;
}

Table run_table(TableId id, int replicates, std::uint64_t seed) {
    switch (id) {
        case TableId::T1: return run_table1(replicates, seed);
        case TableId::T2: return run_table2(replicates, seed);
        case TableId::T3: return run_table3(replicates, seed);
        case TableId::T4: return run_table4(replicates, seed);
        case TableId::RelEff: return run_releff(replicates, seed);
    }
    throw ConfigError("unknown table");
}

}  // namespace gscale::bench
