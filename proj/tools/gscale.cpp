// gscale: k-group scale/location association tests, simulation, benchmarks.
//
//   gscale test     --pheno F --geno F --mode prob --tests gL,gS_LAD,gJLS
//                   [--cluster cluster] --out out.tsv [--seed N]
//   gscale simulate --model 2 --config cfg.txt --out-prefix P
//   gscale bench    --table T1 --replicates 2000 --seed N --out out.tsv
//
// Exit codes: 0 success, 2 parse/config error, 3 numerical failure.
// GSCALE_THREADS caps the worker pool.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gscale/bench.hpp"
#include "gscale/scan.hpp"

namespace {

void report_error(const std::string& kind, const std::string& msg,
                  const std::string& file = "", long line = -1) {
    std::ostringstream os;
    os << "error\tkind=" << kind;
    if (!file.empty()) os << "\tfile=" << file;
    if (line >= 0) os << "\tline=" << line;
    os << "\tmsg=" << msg;
    std::cerr << os.str() << '\n';
}

std::vector<gscale::scan::TestKind> parse_tests(const std::string& csv) {
    std::vector<gscale::scan::TestKind> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(gscale::scan::test_from_name(item));
    }
    if (out.empty()) throw gscale::ConfigError("no tests requested");
    return out;
}

int cmd_test(const std::string& pheno, const std::string& geno,
             const std::string& mode, const std::string& tests,
             const std::string& cluster, const std::string& out,
             std::uint64_t seed) {
    gscale::scan::ScanConfig cfg;
    cfg.pheno_path = pheno;
    cfg.geno_path = geno;
    cfg.mode = gscale::scan::geno_mode_from_name(mode);
    cfg.tests = parse_tests(tests);
    if (!cluster.empty()) cfg.cluster_column = cluster;
    cfg.output_path = out;
    cfg.seed = seed;

    auto summary = gscale::scan::run_scan(cfg);
    std::cerr << "info\tkind=join\tmatched=" << summary.n_matched
              << "\tpheno_only=" << summary.n_pheno_only
              << "\tgeno_only=" << summary.n_geno_only << '\n';
    for (const auto& r : summary.results)
        if (r.skipped)
            std::cerr << "info\tkind=skip\tvariant=" << r.variant
                      << "\treason=" << r.skip_reason << '\n';
    return 0;
}

int cmd_simulate(int model, const std::string& config, const std::string& prefix) {
    auto kv = gscale::scan::read_kv_config(config);
    auto files = gscale::scan::simulate_to_files(model, kv, prefix);
    std::cerr << "info\tkind=simulate\tpheno=" << files.pheno_path
              << "\tgeno=" << files.geno_path << '\n';
    return 0;
}

int cmd_bench(const std::string& table, int replicates, std::uint64_t seed,
              const std::string& out) {
    if (replicates < 100) throw gscale::ConfigError("bench needs at least 100 replicates");
    auto id = gscale::bench::table_from_name(table);
    auto t = gscale::bench::run_table(id, replicates, seed);
    std::ofstream os(out);
    if (!os) throw gscale::ConfigError("cannot open output file " + out);
    gscale::bench::write_table(t, os);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized k-group scale and location-scale association tests"};
    app.require_subcommand(1);

    std::string pheno, geno, mode = "indicator", tests, cluster, out;
    std::uint64_t seed = 0;
    auto* test = app.add_subcommand("test", "per-variant association scan");
    test->add_option("--pheno", pheno, "phenotype TSV (id, y[, cluster])")->required();
    test->add_option("--geno", geno, "genotype TSV")->required();
    test->add_option("--mode", mode, "indicator|prob|bestguess");
    test->add_option("--tests", tests, "comma list: gL,gS_OLS,gS_LAD,TW,gJLS,Levene")
        ->required();
    test->add_option("--cluster", cluster, "cluster column name in the phenotype file");
    test->add_option("--out", out, "output TSV")->required();
    test->add_option("--seed", seed, "seed for randomized subroutines");

    int model = 0;
    std::string config, prefix;
    auto* simulate = app.add_subcommand("simulate", "emit a simulated dataset");
    simulate->add_option("--model", model, "1 (twin pairs) or 2 (sib-pair genotypes)")
        ->required();
    simulate->add_option("--config", config, "key=value config file")->required();
    simulate->add_option("--out-prefix", prefix, "output file prefix")->required();

    std::string table;
    int replicates = 2000;
    std::uint64_t bench_seed = 0;
    std::string bench_out;
    auto* bench = app.add_subcommand("bench", "regenerate a published table grid");
    bench->add_option("--table", table, "T1|T2|T3|T4|releff")->required();
    bench->add_option("--replicates", replicates, "replicates per cell (default 2000)");
    bench->add_option("--seed", bench_seed, "run seed");
    bench->add_option("--out", bench_out, "output TSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (test->parsed()) return cmd_test(pheno, geno, mode, tests, cluster, out, seed);
        if (simulate->parsed()) return cmd_simulate(model, config, prefix);
        if (bench->parsed()) return cmd_bench(table, replicates, bench_seed, bench_out);
    } catch (const gscale::ParseError& e) {
        report_error("parse", e.what(), e.file, e.line);
        return 2;
    } catch (const gscale::ConfigError& e) {
        report_error("config", e.what());
        return 2;
    } catch (const gscale::Error& e) {
        report_error("numerical", e.what());
        return 3;
    } catch (const std::exception& e) {
        report_error("internal", e.what());
        return 3;
    }
    return 0;
}
