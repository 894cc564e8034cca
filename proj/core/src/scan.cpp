#include "gscale/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace gscale::scan {

using regress::ClusterCorrelation;
using regress::DesignMatrix;
using scaletest::SampleData;
using scaletest::Stage1;
using scaletest::TestResult;

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

double parse_double(const std::string& s, const std::string& file, long line) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected a number, got '" + s + "'", file, line);
    }
}

std::string fmt_g(double v) {
    if (std::isnan(v)) return "NA";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string fmt_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

PhenoData read_pheno(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open phenotype file", path, 0);
    std::string line;
    long lineno = 0;
    if (!std::getline(in, line)) throw ParseError("empty phenotype file", path, 0);
    ++lineno;
    auto header = split_tabs(strip_cr(line));
    if (header.size() < 2 || header[0] != "id" || header[1] != "y")
        throw ParseError("phenotype header must start with 'id<TAB>y'", path, lineno);
    if (header.size() > 3)
        throw ParseError("phenotype file has too many columns", path, lineno);

    PhenoData out;
    out.has_cluster_column = header.size() == 3;
    if (out.has_cluster_column) out.cluster_column_name = header[2];

    std::unordered_set<std::string> seen;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto f = split_tabs(line);
        if (f.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) +
                                 " fields, got " + std::to_string(f.size()),
                             path, lineno);
        if (f[0].empty()) throw ParseError("empty id", path, lineno);
        if (!seen.insert(f[0]).second)
            throw ParseError("duplicate id '" + f[0] + "'", path, lineno);
        out.ids.push_back(f[0]);
        out.y.push_back(f[1] == "NA" ? std::numeric_limits<double>::quiet_NaN()
                                     : parse_double(f[1], path, lineno));
        out.cluster.push_back(out.has_cluster_column ? f[2] : std::string());
    }
    return out;
}

GenoMode geno_mode_from_name(const std::string& s) {
    if (s == "indicator") return GenoMode::Indicator;
    if (s == "prob" || s == "probability") return GenoMode::Probability;
    if (s == "bestguess" || s == "dosage-as-best-guess") return GenoMode::BestGuess;
    throw ConfigError("unknown mode '" + s + "' (indicator|prob|bestguess)");
}

const char* geno_mode_name(GenoMode m) {
    switch (m) {
        case GenoMode::Indicator: return "indicator";
        case GenoMode::Probability: return "prob";
        case GenoMode::BestGuess: return "bestguess";
    }
    return "?";
}

GenoData read_geno(const std::string& path, GenoMode mode) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open genotype file", path, 0);
    const bool prob_format = mode != GenoMode::Indicator;

    std::string line;
    long lineno = 0;
    if (!std::getline(in, line)) throw ParseError("empty genotype file", path, 0);
    ++lineno;
    auto header = split_tabs(strip_cr(line));
    if (prob_format) {
        const std::vector<std::string> want{"id", "variant", "p0", "p1", "p2"};
        if (std::vector<std::string>(header) != want)
            throw ParseError("genotype header must be 'id\\tvariant\\tp0\\tp1\\tp2'",
                             path, lineno);
    } else {
        const std::vector<std::string> want{"id", "variant", "g"};
        if (std::vector<std::string>(header) != want)
            throw ParseError("genotype header must be 'id\\tvariant\\tg'", path, lineno);
    }

    GenoData out;
    out.probabilistic = prob_format;
    std::unordered_set<std::string> seen_pairs;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto f = split_tabs(line);
        if (f.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) +
                                 " fields, got " + std::to_string(f.size()),
                             path, lineno);
        if (f[0].empty()) throw ParseError("empty id", path, lineno);
        if (f[1].empty()) throw ParseError("empty variant", path, lineno);
        if (!seen_pairs.insert(f[0] + "\x1f" + f[1]).second)
            throw ParseError("duplicate (id, variant) pair", path, lineno);

        GenoRecord rec;
        rec.id = f[0];
        if (prob_format) {
            bool any_na = f[2] == "NA" || f[3] == "NA" || f[4] == "NA";
            if (any_na) {
                rec.missing = true;
            } else {
                double s = 0.0;
                for (int j = 0; j < 3; ++j) {
                    rec.probs[j] = parse_double(f[2 + j], path, lineno);
                    if (rec.probs[j] < -1e-9 || rec.probs[j] > 1.0 + 1e-9)
                        throw ParseError("probability outside [0,1]", path, lineno);
                    rec.probs[j] = std::clamp(rec.probs[j], 0.0, 1.0);
                    s += rec.probs[j];
                }
                if (std::fabs(s - 1.0) > 1e-6)
                    throw ParseError("probabilities do not sum to 1", path, lineno);
                for (auto& p : rec.probs) p /= s;
            }
        } else {
            if (f[2] == "NA") {
                rec.missing = true;
            } else {
                double g = parse_double(f[2], path, lineno);
                if (g != 0.0 && g != 1.0 && g != 2.0)
                    throw ParseError("genotype must be 0, 1, 2 or NA", path, lineno);
                rec.hard_call = static_cast<int>(g);
            }
        }
        auto [it, fresh] = out.variants.try_emplace(f[1]);
        if (fresh) out.variant_order.push_back(f[1]);
        it->second.push_back(std::move(rec));
    }
    return out;
}

TestKind test_from_name(const std::string& s) {
    if (s == "gL") return TestKind::GL;
    if (s == "gS_OLS") return TestKind::GS_OLS;
    if (s == "gS_LAD") return TestKind::GS_LAD;
    if (s == "TW") return TestKind::TW;
    if (s == "gJLS") return TestKind::GJLS;
    if (s == "Levene") return TestKind::Levene;
    throw ConfigError("unknown test '" + s +
                      "' (gL|gS_OLS|gS_LAD|TW|gJLS|Levene)");
}

const char* test_name(TestKind t) {
    switch (t) {
        case TestKind::GL: return "gL";
        case TestKind::GS_OLS: return "gS_OLS";
        case TestKind::GS_LAD: return "gS_LAD";
        case TestKind::TW: return "TW";
        case TestKind::GJLS: return "gJLS";
        case TestKind::Levene: return "Levene";
    }
    return "?";
}

void ScanConfig::validate() const {
    if (pheno_path.empty() || geno_path.empty())
        throw ConfigError("phenotype and genotype paths are required");
    if (output_path.empty()) throw ConfigError("output path is required");
    if (tests.empty()) throw ConfigError("no tests requested");
    bool has_tw = std::find(tests.begin(), tests.end(), TestKind::TW) != tests.end();
    if (has_tw && !cluster_column)
        throw ConfigError("TW requires a cluster column");
}

namespace {

VariantData assemble_variant(const std::string& variant,
                             const std::vector<GenoRecord>& records,
                             const PhenoData& pheno,
                             const std::unordered_map<std::string, int>& pheno_index,
                             bool probabilistic, GenoMode mode, bool use_clusters) {
    VariantData out;
    out.variant = variant;

    std::vector<double> y;
    std::vector<std::string> cluster;
    std::vector<int> hard;
    std::vector<std::array<double, 3>> probs;
    int dropped = 0;
    for (const auto& rec : records) {
        auto it = pheno_index.find(rec.id);
        if (it == pheno_index.end()) continue;  // counted at the join level
        double yv = pheno.y[it->second];
        if (rec.missing || std::isnan(yv)) {
            ++dropped;
            continue;
        }
        y.push_back(yv);
        cluster.push_back(pheno.cluster[it->second]);
        if (probabilistic) {
            probs.push_back(rec.probs);
        } else {
            hard.push_back(rec.hard_call);
        }
    }
    out.n_used = static_cast<int>(y.size());
    out.n_dropped = dropped;
    out.cluster_labels = cluster;

    const int n = out.n_used;
    if (n < 5) {
        out.skipped = true;
        out.skip_reason = "too_few_observations";
        return out;
    }

    // dosage-based MAF, folded to the minor allele
    double dosage_sum = 0.0;
    if (probabilistic)
        for (const auto& p : probs) dosage_sum += p[1] + 2.0 * p[2];
    else
        for (int g : hard) dosage_sum += g;
    double f = dosage_sum / (2.0 * n);
    out.maf = std::min(f, 1.0 - f);

    DesignMatrix design{Eigen::MatrixXd(), {}};
    try {
        if (mode == GenoMode::BestGuess) {
            std::vector<int> bg(n);
            for (int i = 0; i < n; ++i) {
                int best = 0;
                for (int j = 1; j < 3; ++j)
                    if (probs[i][j] > probs[i][best]) best = j;
                bg[i] = best;
            }
            design = simgen::design_from_genotypes(bg);
        } else if (probabilistic) {
            Eigen::MatrixXd P(n, 3);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < 3; ++j) P(i, j) = probs[i][j];
            design = simgen::design_from_probabilities(P);
        } else {
            design = simgen::design_from_genotypes(hard);
        }
    } catch (const InsufficientGroupError&) {
        out.skipped = true;
        out.skip_reason = "monomorphic";
        return out;
    }
    if (n <= design.cols()) {
        out.skipped = true;
        out.skip_reason = "too_few_observations";
        return out;
    }

    Eigen::VectorXd yv = Eigen::Map<Eigen::VectorXd>(y.data(), n);
    std::optional<ClusterCorrelation> clusters;
    if (use_clusters) {
        std::vector<int> ids(n);
        std::unordered_map<std::string, int> label_to_id;
        int next = 0;
        for (int i = 0; i < n; ++i) {
            if (cluster[i].empty()) {
                ids[i] = next++;  // blank = singleton
            } else {
                auto [it, fresh] = label_to_id.emplace(cluster[i], next);
                if (fresh) ++next;
                ids[i] = it->second;
            }
        }
        clusters.emplace(ids);
    }
    out.data = SampleData{std::move(yv), std::move(design), std::move(clusters)};
    return out;
}

void run_tests_on_variant(VariantResult& res, const SampleData& data,
                          const std::vector<TestKind>& tests) {
    auto record = [&](TestKind kind, const TestResult& tr) {
        res.tests.emplace(test_name(kind), tr);
        if (!res.rho_hat && tr.rho_hat) res.rho_hat = tr.rho_hat;
    };
    for (TestKind kind : tests) {
        try {
            switch (kind) {
                case TestKind::GL:
                    record(kind, loctest::gl_test(data));
                    break;
                case TestKind::GS_OLS:
                    record(kind, scaletest::gs_test(data, Stage1::OLS));
                    break;
                case TestKind::GS_LAD:
                    record(kind, scaletest::gs_test(data, Stage1::LAD));
                    break;
                case TestKind::TW:
                    record(kind, scaletest::tw_test(data, Stage1::LAD));
                    break;
                case TestKind::Levene:
                    // median-centered classical test; sample correlation ignored
                    record(kind, scaletest::levene_classic(data, Stage1::LAD, true));
                    break;
                case TestKind::GJLS:
                    res.joint = loctest::gjls_test(data, Stage1::LAD);
                    if (!res.rho_hat && res.joint->scale.rho_hat)
                        res.rho_hat = res.joint->scale.rho_hat;
                    break;
            }
        } catch (const Error&) {
            // leave this test's columns as NA; other tests still run
        }
    }
    // prefer the scale-stage rho for the output column
    for (const char* tag : {"gS_LAD", "gS_OLS"}) {
        auto it = res.tests.find(tag);
        if (it != res.tests.end() && it->second.rho_hat) {
            res.rho_hat = it->second.rho_hat;
            break;
        }
    }
    if (!res.rho_hat && res.joint && res.joint->scale.rho_hat)
        res.rho_hat = res.joint->scale.rho_hat;
}

}  // namespace

std::vector<VariantData> load_variants(const ScanConfig& cfg, JoinCounts* counts) {
    PhenoData pheno = read_pheno(cfg.pheno_path);
    GenoData geno = read_geno(cfg.geno_path, cfg.mode);

    if (cfg.cluster_column) {
        if (!pheno.has_cluster_column || pheno.cluster_column_name != *cfg.cluster_column)
            throw ConfigError("phenotype file has no cluster column named '" +
                              *cfg.cluster_column + "'");
    }

    std::unordered_map<std::string, int> pheno_index;
    for (int i = 0; i < static_cast<int>(pheno.ids.size()); ++i)
        pheno_index.emplace(pheno.ids[i], i);

    if (counts) {
        std::unordered_set<std::string> geno_ids;
        for (const auto& [variant, records] : geno.variants)
            for (const auto& rec : records) geno_ids.insert(rec.id);
        counts->n_matched = 0;
        for (const auto& id : geno_ids)
            if (pheno_index.count(id)) ++counts->n_matched;
        counts->n_geno_only = static_cast<int>(geno_ids.size()) - counts->n_matched;
        counts->n_pheno_only =
            static_cast<int>(pheno.ids.size()) - counts->n_matched;
    }

    std::vector<VariantData> out;
    out.reserve(geno.variant_order.size());
    for (const auto& variant : geno.variant_order)
        out.push_back(assemble_variant(variant, geno.variants.at(variant), pheno,
                                       pheno_index, geno.probabilistic, cfg.mode,
                                       cfg.cluster_column.has_value()));
    return out;
}

ScanSummary run_scan(const ScanConfig& cfg) {
    cfg.validate();
    JoinCounts counts;
    auto variants = load_variants(cfg, &counts);

    ScanSummary summary;
    summary.n_matched = counts.n_matched;
    summary.n_pheno_only = counts.n_pheno_only;
    summary.n_geno_only = counts.n_geno_only;

    summary.results.resize(variants.size());
    for (std::size_t v = 0; v < variants.size(); ++v) {
        VariantResult res;
        res.variant = variants[v].variant;
        res.maf = variants[v].maf;
        res.n_used = variants[v].n_used;
        res.n_dropped = variants[v].n_dropped;
        res.skipped = variants[v].skipped;
        res.skip_reason = variants[v].skip_reason;
        if (!res.skipped) run_tests_on_variant(res, *variants[v].data, cfg.tests);
        summary.results[v] = std::move(res);
    }

    if (!cfg.output_path.empty()) {
        std::ofstream os(cfg.output_path);
        if (!os) throw ConfigError("cannot open output file " + cfg.output_path);
        write_scan_tsv(summary, cfg.tests, os);
    }
    return summary;
}

void write_scan_tsv(const ScanSummary& summary, const std::vector<TestKind>& tests,
                    std::ostream& os) {
    os << "variant\tmaf\tn_used\tn_dropped\trho_hat";
    for (TestKind t : tests) {
        const char* tag = test_name(t);
        os << '\t' << tag << "_stat\t" << tag << "_df1\t" << tag << "_df2\t" << tag
           << "_p";
    }
    os << "\tnote\n";

    for (const auto& r : summary.results) {
        os << r.variant << '\t' << fmt_g(r.maf) << '\t' << r.n_used << '\t'
           << r.n_dropped << '\t' << (r.rho_hat ? fmt_g(*r.rho_hat) : "NA");
        for (TestKind t : tests) {
            if (t == TestKind::GJLS && r.joint) {
                const auto& j = *r.joint;
                os << '\t' << fmt_g(j.w_f) << "\t4\tNA\t" << fmt_g(j.p_joint);
                continue;
            }
            auto it = r.tests.find(test_name(t));
            if (it == r.tests.end()) {
                os << "\tNA\tNA\tNA\tNA";
                continue;
            }
            const auto& tr = it->second;
            os << '\t' << fmt_g(tr.statistic) << '\t' << tr.df1 << '\t'
               << (tr.df2 ? std::to_string(*tr.df2) : "NA") << '\t' << fmt_g(tr.p_value);
        }
        os << '\t' << (r.skipped ? r.skip_reason : "") << '\n';
    }
}

void permute_within_strata(Eigen::VectorXd& y, const std::vector<std::string>& cluster,
                           Rng& rng) {
    const int n = static_cast<int>(y.size());
    if (static_cast<int>(cluster.size()) != n)
        throw ParameterError("cluster labels/outcome length mismatch");

    std::vector<int> singles;
    std::unordered_map<std::string, std::vector<int>> blocks;
    std::vector<std::string> block_order;
    for (int i = 0; i < n; ++i) {
        if (cluster[i].empty()) {
            singles.push_back(i);
        } else {
            auto [it, fresh] = blocks.try_emplace(cluster[i]);
            if (fresh) block_order.push_back(cluster[i]);
            it->second.push_back(i);
        }
    }
    // size-1 named clusters are singletons too
    std::map<std::size_t, std::vector<const std::vector<int>*>> by_size;
    for (const auto& label : block_order) {
        const auto& members = blocks[label];
        if (members.size() == 1)
            singles.push_back(members[0]);
        else
            by_size[members.size()].push_back(&members);
    }

    Eigen::VectorXd out = y;
    // Fisher-Yates over the singleton values
    if (singles.size() > 1) {
        std::vector<double> vals(singles.size());
        for (std::size_t i = 0; i < singles.size(); ++i) vals[i] = y[singles[i]];
        for (std::size_t i = vals.size() - 1; i > 0; --i)
            std::swap(vals[i], vals[rng.uniform_below(i + 1)]);
        for (std::size_t i = 0; i < singles.size(); ++i) out[singles[i]] = vals[i];
    }
    // permute whole blocks among blocks of the same size, member order kept
    for (auto& [size, list] : by_size) {
        if (list.size() < 2) continue;
        std::vector<std::size_t> perm(list.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
        for (std::size_t i = perm.size() - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.uniform_below(i + 1)]);
        for (std::size_t b = 0; b < list.size(); ++b) {
            const auto& dst = *list[b];
            const auto& src = *list[perm[b]];
            for (std::size_t m = 0; m < size; ++m) out[dst[m]] = y[src[m]];
        }
    }
    y = out;
}

std::map<std::string, std::string> read_kv_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file", path, 0);
    std::map<std::string, std::string> kv;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t");
        line = line.substr(first, last - first + 1);
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected key=value", path, lineno);
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        auto trim = [](std::string s) {
            auto a = s.find_first_not_of(" \t");
            if (a == std::string::npos) return std::string();
            auto b = s.find_last_not_of(" \t");
            return s.substr(a, b - a + 1);
        };
        key = trim(key);
        val = trim(val);
        if (key.empty()) throw ParseError("empty key", path, lineno);
        if (!kv.emplace(key, val).second)
            throw ParseError("duplicate key '" + key + "'", path, lineno);
    }
    return kv;
}

namespace {

class KvReader {
  public:
    explicit KvReader(const std::map<std::string, std::string>& kv) : kv_(kv) {}

    double number(const std::string& key, std::optional<double> fallback = {}) {
        used_.insert(key);
        auto it = kv_.find(key);
        if (it == kv_.end()) {
            if (fallback) return *fallback;
            throw ConfigError("missing config key '" + key + "'");
        }
        try {
            return std::stod(it->second);
        } catch (const std::exception&) {
            throw ConfigError("config key '" + key + "' is not a number");
        }
    }

    std::string text(const std::string& key, const std::string& fallback) {
        used_.insert(key);
        auto it = kv_.find(key);
        return it == kv_.end() ? fallback : it->second;
    }

    void reject_unknown() const {
        for (const auto& [key, value] : kv_)
            if (!used_.count(key))
                throw ConfigError("unknown config key '" + key + "'");
    }

  private:
    const std::map<std::string, std::string>& kv_;
    std::set<std::string> used_;
};

std::string individual_id(int i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "i%06d", i + 1);
    return buf;
}

std::string cluster_id_label(int c) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "c%06d", c + 1);
    return buf;
}

}  // namespace

SimulateOutput simulate_to_files(int model,
                                 const std::map<std::string, std::string>& kv,
                                 const std::string& out_prefix) {
    SimulateOutput paths;
    paths.pheno_path = out_prefix + ".pheno.tsv";
    paths.geno_path = out_prefix + ".geno.tsv";

    std::ofstream ph(paths.pheno_path);
    std::ofstream ge(paths.geno_path);
    if (!ph || !ge) throw ConfigError("cannot open output files for prefix " + out_prefix);
    ph << "id\ty\tcluster\n";

    KvReader rd(kv);
    if (model == 1) {
        simgen::Model1Config cfg;
        cfg.n1 = static_cast<int>(rd.number("n1"));
        cfg.n2 = static_cast<int>(rd.number("n2"));
        cfg.rho1 = rd.number("rho1", 0.75);
        cfg.rho2 = rd.number("rho2", 0.5);
        cfg.sigma = {rd.number("sigma1", 1.0), rd.number("sigma2", 1.0)};
        cfg.margin = simgen::margin_from_name(rd.text("margin", "gaussian"));
        cfg.seed = static_cast<std::uint64_t>(rd.number("seed", 0));
        rd.reject_unknown();
        auto sim = simgen::gen_model1(cfg);

        ge << "id\tvariant\tg\n";
        const auto& X = sim.sample.design.X;
        for (Eigen::Index i = 0; i < sim.sample.n(); ++i) {
            std::string id = individual_id(static_cast<int>(i));
            ph << id << '\t' << fmt_full(sim.sample.y[i]) << '\t'
               << cluster_id_label(sim.cluster_id[i]) << '\n';
            ge << id << "\tsim1\t" << static_cast<int>(X(i, 1)) << '\n';
        }
    } else if (model == 2) {
        simgen::Model2Config cfg;
        cfg.n_pairs = static_cast<int>(rd.number("n_pairs"));
        cfg.maf = rd.number("maf");
        cfg.rho = rd.number("rho", 0.5);
        cfg.sigma = {rd.number("sigma0", 1.0), rd.number("sigma1", 1.0),
                     rd.number("sigma2", 1.0)};
        cfg.margin = simgen::margin_from_name(rd.text("margin", "gaussian"));
        cfg.uncertainty_a = rd.number("a", 1.0);
        cfg.seed = static_cast<std::uint64_t>(rd.number("seed", 0));
        rd.reject_unknown();
        auto sim = simgen::gen_model2(cfg);

        ge << "id\tvariant\tp0\tp1\tp2\n";
        for (Eigen::Index i = 0; i < sim.sample.n(); ++i) {
            std::string id = individual_id(static_cast<int>(i));
            ph << id << '\t' << fmt_full(sim.sample.y[i]) << '\t'
               << cluster_id_label(sim.cluster_id[i]) << '\n';
            ge << id << "\tsim1\t" << fmt_full(sim.probabilities(i, 0)) << '\t'
               << fmt_full(sim.probabilities(i, 1)) << '\t'
               << fmt_full(sim.probabilities(i, 2)) << '\n';
        }
    } else {
        throw ConfigError("model must be 1 or 2");
    }
    return paths;
}

}  // namespace gscale::scan
