#pragma once

// File formats: weighting JSON, pattern-table CSV, patch CSV + metadata JSON,
// realization CSV, tuple lists and correlation reports.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wmc/correlation.hpp"
#include "wmc/cyclic_comb.hpp"
#include "wmc/patch.hpp"
#include "wmc/stochastic.hpp"

namespace wmc::io {

using nlohmann::json;

/// Decimal with 12 significant digits.
std::string format_number(double x);

/// {"N":6, "windows":[[0],[1],...], "weights":[11, "5/2", ...]}
cyclic::CyclicWeighting parse_weighting(const json& j);
cyclic::CyclicWeighting load_weighting(const std::filesystem::path& path);
json weighting_to_json(const cyclic::CyclicWeighting& w);

/// Optional "factors": [[a0,a1,...], ...] key of a weighting file: a factored
/// polynomial whose folded expansion should reproduce the coefficients.
std::optional<cyclic::FactoredPolynomial> parse_factors(const json& j);

struct WeightingFile {
    cyclic::CyclicWeighting weighting;
    std::optional<cyclic::FactoredPolynomial> factors;
};
WeightingFile load_weighting_file(const std::filesystem::path& path);

void write_pattern_table_csv(std::ostream& os, const cyclic::PatternTable& table);

struct PatchMetadata {
    double R = 0.0;
    double margin = 0.0;
    double rho = 0.0;
    double tau_x = 0.0;
    double tau_y = 0.0;
    std::size_t count = 0;
    cutproject::Census census{};
    cutproject::EmbeddingResiduals residuals;
};

PatchMetadata metadata_of(const cutproject::ColoredPatch& patch, const cutproject::SchemeEmbedding& emb);
json metadata_to_json(const PatchMetadata& m);
PatchMetadata parse_metadata(const json& j);

/// Columns d1,d2,d3,d4,x,y,xs,ys,color.
void write_patch_csv(std::ostream& os, const cutproject::ColoredPatch& patch);
/// Same columns plus kept.
void write_realization_csv(std::ostream& os, const cutproject::ColoredPatch& patch,
                           const stochastic::Realization& real);

/// Reads patch rows; throws ParseError with the 1-based line number.
std::vector<cutproject::PatchPoint> read_patch_rows(std::istream& is);

/// <stem>.csv holds the rows, <stem>.json the metadata.
std::filesystem::path metadata_path(const std::filesystem::path& csv);
void save_patch(const std::filesystem::path& csv, const cutproject::ColoredPatch& patch,
                const cutproject::SchemeEmbedding& emb);
cutproject::ColoredPatch load_patch(const std::filesystem::path& csv);

/// Either {"probabilities":[p0..p5]} or a weighting file (rescaled by its
/// largest weight).
stochastic::ThinningConfig load_probabilities(const std::filesystem::path& path, std::uint64_t seed);

/// [[[d1,d2,d3,d4], ...], ...]
std::vector<std::vector<cutproject::LatticePoint4>> parse_tuples(const json& j);
json tuples_to_json(const std::vector<std::vector<cutproject::LatticePoint4>>& tuples);

json report_to_json(const correlation::CorrelationReport& report);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace wmc::io
