#pragma once

// JSON input and output. Rationals are read from "p/q" strings (or plain
// numbers); every double is written rounded to 12 significant digits.

#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "locent/entropy.hpp"
#include "locent/tiling.hpp"
#include "locent/tuples.hpp"

namespace locent::io {

using Json = nlohmann::ordered_json;

/// Unreadable or malformed input (CLI exit status 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json read_file(const std::filesystem::path& path);

double rational(const Json& j);
/// 12 significant digits; infinities become null.
Json number(double x);

GroupElement element_from_json(Json j, int dim = 0);
FiniteSubset subset_from_json(const Json& j, int dim = 0);
FolnerSequence folner_from_json(const Json& j);
FolnerSequence folner_from_name(const std::string& name, int dim);

SFT sft_from_json(const Json& j);
Pattern pattern_from_json(const Json& j, const Alphabet& alphabet, int dim);
SymbolicSet set_from_json(const Json& j, const Alphabet& alphabet, int dim);
Cover cover_from_json(const Json& j, const Alphabet& alphabet, int dim);
Measure measure_from_json(const Json& j, const Alphabet& alphabet, int dim);
/// {"r": r, "points": [...]} with each point a pattern object or the list of
/// symbols on [-r,r]^d in canonical order.
TupleCandidate points_from_json(const Json& j, const Alphabet& alphabet, int dim);

Json to_json(const GroupElement& g);
Json to_json(const FiniteSubset& f);
Json to_json(const SFT& sft);
Json to_json(const Pattern& p, const Alphabet& alphabet);
Json to_json(const SymbolicSet& s, const Alphabet& alphabet);
Json to_json(const Cover& c, const Alphabet& alphabet);

/// Per-window seconds are included only with `timings` so that reports
/// are otherwise byte-identical across runs.
Json to_json(const EntropyEstimate& e, bool timings = false);
Json to_json(const QuasiTiling& t, const QuasiTilingCheck& check);
Json to_json(const TupleReport& r);
Json to_json(const KatokEstimate& k, bool timings = false);
Json to_json(const VpReport& r, bool timings = false);

/// Whitespace-separated columns "n value running_infimum certified_upper"
/// after a '#' header line.
std::string plot_data(const Json& report);

}  // namespace locent::io
