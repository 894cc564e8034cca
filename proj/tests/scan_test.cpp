#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gscale/scan.hpp"
#include "support/oracles.hpp"

using namespace gscale;
using namespace gscale::scan;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path dir;
    TempDir() {
        dir = fs::temp_directory_path() /
              ("gscale_scan_test_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~TempDir() { fs::remove_all(dir); }
    std::string file(const std::string& name) const { return (dir / name).string(); }
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path);
    os << content;
}

}  // namespace

TEST_SUITE("scan") {

TEST_CASE("phenotype parsing accepts the documented shapes") {
    TempDir t;
    write_file(t.file("p.tsv"), "id\ty\tcluster\na\t1.5\tc1\nb\tNA\t\nc\t2\tc1\n");
    auto p = read_pheno(t.file("p.tsv"));
    CHECK(p.ids == std::vector<std::string>{"a", "b", "c"});
    CHECK(p.y[0] == 1.5);
    CHECK(std::isnan(p.y[1]));
    CHECK(p.cluster[1].empty());
    CHECK(p.has_cluster_column);

    write_file(t.file("p2.tsv"), "id\ty\na\t1\n");
    CHECK(!read_pheno(t.file("p2.tsv")).has_cluster_column);
}

TEST_CASE("parse errors carry file and line") {
    TempDir t;
    write_file(t.file("bad.tsv"), "id\ty\na\t1\nb\n");
    try {
        read_pheno(t.file("bad.tsv"));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(e.file == t.file("bad.tsv"));
    }

    write_file(t.file("dup.tsv"), "id\ty\na\t1\na\t2\n");
    CHECK_THROWS_AS(read_pheno(t.file("dup.tsv")), ParseError);

    write_file(t.file("badg.tsv"), "id\tvariant\tg\na\tv1\t3\n");
    CHECK_THROWS_AS(read_geno(t.file("badg.tsv"), GenoMode::Indicator), ParseError);

    write_file(t.file("badp.tsv"), "id\tvariant\tp0\tp1\tp2\na\tv1\t0.5\t0.2\t0.2\n");
    CHECK_THROWS_AS(read_geno(t.file("badp.tsv"), GenoMode::Probability), ParseError);
}

TEST_CASE("one-hot probability file matches the indicator file") {
    TempDir t;
    Rng rng = Rng::seeded(42);
    std::ostringstream ph, gi, gp;
    ph << "id\ty\tcluster\n";
    gi << "id\tvariant\tg\n";
    gp << "id\tvariant\tp0\tp1\tp2\n";
    for (int i = 0; i < 90; ++i) {
        int g = static_cast<int>(rng.uniform_below(3));
        double y = rng.normal() * (1.0 + 0.3 * g);
        ph << "i" << i << '\t' << y << "\t\n";
        gi << "i" << i << "\tv1\t" << g << '\n';
        gp << "i" << i << "\tv1\t" << (g == 0) << '\t' << (g == 1) << '\t' << (g == 2)
           << '\n';
    }
    write_file(t.file("p.tsv"), ph.str());
    write_file(t.file("gi.tsv"), gi.str());
    write_file(t.file("gp.tsv"), gp.str());

    ScanConfig ci;
    ci.pheno_path = t.file("p.tsv");
    ci.geno_path = t.file("gi.tsv");
    ci.mode = GenoMode::Indicator;
    ci.tests = {TestKind::GL, TestKind::GS_LAD, TestKind::Levene};
    ci.output_path = t.file("oi.tsv");
    auto ri = run_scan(ci);

    ScanConfig cp = ci;
    cp.geno_path = t.file("gp.tsv");
    cp.mode = GenoMode::Probability;
    cp.output_path = t.file("op.tsv");
    auto rp = run_scan(cp);

    ScanConfig cb = cp;
    cb.mode = GenoMode::BestGuess;
    cb.output_path = t.file("ob.tsv");
    auto rb = run_scan(cb);

    REQUIRE(ri.results.size() == 1);
    for (const auto* other : {&rp, &rb}) {
        REQUIRE(other->results.size() == 1);
        for (const auto& [tag, tr] : ri.results[0].tests) {
            auto it = other->results[0].tests.find(tag);
            REQUIRE(it != other->results[0].tests.end());
            CHECK(tr.statistic == doctest::Approx(it->second.statistic).epsilon(1e-12));
            CHECK(tr.p_value == doctest::Approx(it->second.p_value).epsilon(1e-12));
        }
    }
}

TEST_CASE("simulated files round-trip and gS equals Levene on indicators") {
    TempDir t;
    std::map<std::string, std::string> kv{{"n1", "60"},    {"n2", "60"},
                                          {"margin", "gaussian"}, {"seed", "5"}};
    auto files = simulate_to_files(1, kv, t.file("m1"));

    ScanConfig cfg;
    cfg.pheno_path = files.pheno_path;
    cfg.geno_path = files.geno_path;
    cfg.mode = GenoMode::Indicator;
    cfg.tests = {TestKind::GS_LAD, TestKind::Levene, TestKind::GS_OLS};
    cfg.output_path = t.file("out.tsv");
    // clusters deliberately ignored: reduction to the classical test
    auto summary = run_scan(cfg);
    REQUIRE(summary.results.size() == 1);
    const auto& res = summary.results[0];
    CHECK(res.n_used == 240);
    CHECK(std::fabs(res.tests.at("gS_LAD").statistic -
                    res.tests.at("Levene").statistic) <= 1e-10);

    // byte-identical rerun
    auto files2 = simulate_to_files(1, kv, t.file("m1b"));
    std::ifstream a(files.pheno_path), b(files2.pheno_path);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
}

TEST_CASE("model 2 simulate: a=1 emits one-hot rows, maf close to target") {
    TempDir t;
    std::map<std::string, std::string> kv{{"n_pairs", "5000"}, {"maf", "0.2"},
                                          {"a", "1"},          {"seed", "9"}};
    auto files = simulate_to_files(2, kv, t.file("m2"));
    auto geno = read_geno(files.geno_path, GenoMode::Probability);
    const auto& recs = geno.variants.at("sim1");
    CHECK(recs.size() == 10000);
    double dosage = 0.0;
    for (const auto& r : recs) {
        int ones = 0;
        for (double p : r.probs) {
            CHECK((p == 0.0 || p == 1.0));
            ones += p == 1.0;
        }
        CHECK(ones == 1);
        dosage += r.probs[1] + 2 * r.probs[2];
    }
    CHECK(std::fabs(dosage / (2 * 10000.0) - 0.2) < 0.01);
}

TEST_CASE("NA handling, monomorphic skip and join counts") {
    TempDir t;
    write_file(t.file("p.tsv"),
               "id\ty\tcluster\na\t1.0\t\nb\tNA\t\nc\t2.0\t\nd\t0.5\t\ne\t1.5\t\n"
               "f\t0.1\t\ng\t0.2\t\nh\t0.9\t\nz\t3.0\t\n");
    // v1: polymorphic with one NA genotype and one NA phenotype
    // v2: monomorphic
    std::ostringstream g;
    g << "id\tvariant\tg\n";
    const char* ids = "abcdefgh";
    for (int i = 0; i < 8; ++i)
        g << ids[i] << "\tv1\t" << (i == 0 ? std::string("NA") : std::to_string(i % 2))
          << '\n';
    for (int i = 0; i < 8; ++i) g << ids[i] << "\tv2\t1\n";
    g << "only_geno\tv1\t0\n";
    write_file(t.file("g.tsv"), g.str());

    ScanConfig cfg;
    cfg.pheno_path = t.file("p.tsv");
    cfg.geno_path = t.file("g.tsv");
    cfg.mode = GenoMode::Indicator;
    cfg.tests = {TestKind::GL};
    cfg.output_path = t.file("o.tsv");
    auto summary = run_scan(cfg);

    CHECK(summary.n_matched == 8);
    CHECK(summary.n_geno_only == 1);
    CHECK(summary.n_pheno_only == 1);
    REQUIRE(summary.results.size() == 2);
    CHECK(summary.results[0].n_dropped == 2);  // one NA geno, one NA pheno
    CHECK(summary.results[0].n_used == 6);
    CHECK(summary.results[1].skipped);
    CHECK(summary.results[1].skip_reason == "monomorphic");

    // output is schema-stable
    std::ifstream in(t.file("o.tsv"));
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "variant\tmaf\tn_used\tn_dropped\trho_hat\tgL_stat\tgL_df1\tgL_df2\tgL_p\tnote");
}

TEST_CASE("permutation preserves strata structure") {
    Rng rng = Rng::seeded(77);
    // 6 singletons + 3 pairs + 1 named singleton
    std::vector<std::string> cluster{"", "", "", "", "", "",
                                     "p1", "p1", "p2", "p2", "p3", "p3", "q"};
    Eigen::VectorXd y(13);
    for (int i = 0; i < 13; ++i) y[i] = i;
    Eigen::VectorXd orig = y;

    std::multiset<double> orig_singles{0, 1, 2, 3, 4, 5, 12};
    std::multiset<std::pair<double, double>> orig_pairs{{6, 7}, {8, 9}, {10, 11}};

    for (int rep = 0; rep < 20; ++rep) {
        Eigen::VectorXd perm = orig;
        permute_within_strata(perm, cluster, rng);
        std::multiset<double> singles;
        for (int i : {0, 1, 2, 3, 4, 5, 12}) singles.insert(perm[i]);
        CHECK(singles == orig_singles);
        std::multiset<std::pair<double, double>> blocks;
        blocks.insert({perm[6], perm[7]});
        blocks.insert({perm[8], perm[9]});
        blocks.insert({perm[10], perm[11]});
        CHECK(blocks == orig_pairs);
    }
}

TEST_CASE("config validation rejects inconsistent requests") {
    ScanConfig cfg;
    cfg.pheno_path = "p";
    cfg.geno_path = "g";
    cfg.output_path = "o";
    cfg.tests = {TestKind::TW};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);  // TW without clusters
    cfg.cluster_column = "cluster";
    CHECK_NOTHROW(cfg.validate());

    CHECK_THROWS_AS(test_from_name("bogus"), ConfigError);
    CHECK_THROWS_AS(geno_mode_from_name("bogus"), ConfigError);
    CHECK(geno_mode_from_name("dosage-as-best-guess") == GenoMode::BestGuess);
}

TEST_CASE("kv config parsing") {
    TempDir t;
    write_file(t.file("c.txt"), "# comment\n n1 = 5 \nn2=6\nmargin=t4\n\nseed=3\n");
    auto kv = read_kv_config(t.file("c.txt"));
    CHECK(kv.at("n1") == "5");
    CHECK(kv.at("margin") == "t4");
    write_file(t.file("bad.txt"), "n1 5\n");
    CHECK_THROWS_AS(read_kv_config(t.file("bad.txt")), ParseError);
    CHECK_THROWS_AS(simulate_to_files(2, {{"n_pairs", "10"}, {"maf", "0.2"},
                                          {"typo_key", "1"}},
                                      t.file("x")),
                    ConfigError);
}

}  // TEST_SUITE
