#ifndef GSCALE_SCAN_HPP
#define GSCALE_SCAN_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gscale/loctest.hpp"
#include "gscale/simgen.hpp"

namespace gscale::scan {

// Phenotype file: TSV, header "id<TAB>y<TAB>cluster" (the cluster column is
// optional; a blank cluster means singleton). Missing y is the literal NA.
struct PhenoData {
    std::vector<std::string> ids;
    std::vector<double> y;              // NaN for NA
    std::vector<std::string> cluster;   // empty string = singleton
    bool has_cluster_column = false;
    std::string cluster_column_name;
};

PhenoData read_pheno(const std::string& path);

enum class GenoMode { Indicator, Probability, BestGuess };

GenoMode geno_mode_from_name(const std::string& s);
const char* geno_mode_name(GenoMode m);

// Genotype file: TSV, header "id<TAB>variant<TAB>g" (indicator mode,
// g in {0,1,2} or NA) or "id<TAB>variant<TAB>p0<TAB>p1<TAB>p2"
// (probability mode). BestGuess reads the probability format and hard-calls
// the argmax category.
struct GenoRecord {
    std::string id;
    int hard_call = -1;                  // indicator mode
    std::array<double, 3> probs{0, 0, 0};
    bool missing = false;
};

struct GenoData {
    bool probabilistic = false;
    std::vector<std::string> variant_order;
    std::map<std::string, std::vector<GenoRecord>> variants;
};

GenoData read_geno(const std::string& path, GenoMode mode);

enum class TestKind { GL, GS_OLS, GS_LAD, TW, GJLS, Levene };

TestKind test_from_name(const std::string& s);
const char* test_name(TestKind t);

struct ScanConfig {
    std::string pheno_path;
    std::string geno_path;
    GenoMode mode = GenoMode::Indicator;
    std::vector<TestKind> tests;
    std::optional<std::string> cluster_column;  // none = ignore clustering
    std::string output_path;
    std::uint64_t seed = 0;
    void validate() const;
};

// Per-variant assembled data plus bookkeeping for the output row.
struct VariantData {
    std::string variant;
    std::optional<scaletest::SampleData> data;  // absent when skipped
    std::vector<std::string> cluster_labels;    // empty strings = singletons
    double maf = 0.0;
    int n_used = 0;
    int n_dropped = 0;  // NA phenotype or genotype among matched ids
    bool skipped = false;
    std::string skip_reason;
};

struct JoinCounts {
    int n_matched = 0;
    int n_pheno_only = 0;
    int n_geno_only = 0;
};

// Ingestion without running tests: inner join, NA drop, design assembly.
std::vector<VariantData> load_variants(const ScanConfig& cfg, JoinCounts* counts = nullptr);

struct VariantResult {
    std::string variant;
    double maf = 0.0;
    int n_used = 0;
    int n_dropped = 0;
    bool skipped = false;
    std::string skip_reason;
    std::optional<double> rho_hat;
    std::map<std::string, scaletest::TestResult> tests;  // keyed by column tag
    std::optional<loctest::JointResult> joint;
};

struct ScanSummary {
    int n_matched = 0;    // ids present in both files
    int n_pheno_only = 0;
    int n_geno_only = 0;
    std::vector<VariantResult> results;
};

// Inner join on id, per-variant NA drop, requested tests, TSV output with a
// fixed header and %.6g formatting. Returns the summary it wrote.
ScanSummary run_scan(const ScanConfig& cfg);

void write_scan_tsv(const ScanSummary& summary, const std::vector<TestKind>& tests,
                    std::ostream& os);

// Shuffles y in place within exchangeability strata: singleton outcomes move
// among singleton slots, cluster blocks of equal size move among each other
// with member order preserved.
void permute_within_strata(Eigen::VectorXd& y, const std::vector<std::string>& cluster,
                           Rng& rng);

// key=value simulation configs for the CLI.
std::map<std::string, std::string> read_kv_config(const std::string& path);

struct SimulateOutput {
    std::string pheno_path;
    std::string geno_path;
};

// Writes <prefix>.pheno.tsv and <prefix>.geno.tsv; model 1 emits the group
// as an indicator genotype, model 2 emits probability rows. Deterministic,
// byte-identical for a fixed config.
SimulateOutput simulate_to_files(int model,
                                 const std::map<std::string, std::string>& kv,
                                 const std::string& out_prefix);

}  // namespace gscale::scan

#endif
