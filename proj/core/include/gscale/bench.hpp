#ifndef GSCALE_BENCH_HPP
#define GSCALE_BENCH_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "gscale/simgen.hpp"

namespace gscale::bench {

// Deterministic seed chain: cell seeds come from the run seed, replicate
// seeds from the cell seed, all through the Rng substream mix.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Empirical rejection rates at the 5% level over seeded replicates;
// replicates run in parallel with per-replicate substreams.
struct CellRates {
    int replicates = 0;
    std::map<std::string, double> rate;      // test tag -> rejection rate
    std::map<std::string, int> failures;     // test tag -> error count
    double se(const std::string& tag) const;
};

// Twin model cell: Lev/TW/gS with OLS and LAD centering.
CellRates run_model1_cell(int n1, int n2, simgen::Margin margin,
                          std::array<double, 2> sigma, int replicates,
                          std::uint64_t seed);

// Sib-pair model cell: gS_LAD and TW_LAD on probabilistic rows plus their
// best-guess counterparts (identical when a = 1).
CellRates run_model2_cell(double maf, int n_pairs, simgen::Margin margin,
                          std::array<double, 3> sigma, double uncertainty_a,
                          int replicates, std::uint64_t seed);

struct JointNullRep {
    double p_location = 1.0;
    double p_scale = 1.0;
    double w_f = 0.0;
    double p_joint = 1.0;
};

// Per-replicate joint-null p-values under model 1 (for independence and
// calibration checks of the Fisher combination).
std::vector<JointNullRep> run_model1_joint_null(int n1, int n2, simgen::Margin margin,
                                                int replicates, std::uint64_t seed);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void write_table(const Table& t, std::ostream& os);

enum class TableId { T1, T2, T3, T4, RelEff };
TableId table_from_name(const std::string& s);

// Desk-scale regenerations of the published grids. The power grids use the
// group variances (1, 1.5, 2), i.e. sigma = (1, sqrt(1.5), sqrt(2)).
Table run_table1(int replicates, std::uint64_t seed);
Table run_table2(int replicates, std::uint64_t seed);
Table run_table3(int replicates, std::uint64_t seed);
Table run_table4(int replicates, std::uint64_t seed);
Table run_releff(int replicates, std::uint64_t seed);

Table run_table(TableId id, int replicates, std::uint64_t seed);

}  // namespace gscale::bench

#endif
