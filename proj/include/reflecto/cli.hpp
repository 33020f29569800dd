#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "reflecto/io.hpp"
#include "reflecto/matrix_classes.hpp"
#include "reflecto/network.hpp"
#include "reflecto/tightness.hpp"

// Command implementations behind the `reflecto` executable. Each returns the
// process exit code: 0 when the command completed, 1 on bad input, 2 when
// an internal cross-check failed.
namespace reflecto::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitBadInput = 1;
inline constexpr int kExitInternal = 2;

struct AnalyzeOptions {
  std::filesystem::path spec_path;
  bool json = false;
  std::optional<std::string> b_csv;
  std::size_t samples = 20;
  std::uint64_t seed = 0;
  bool unbounded_aux = false;
};

struct ClassifyOptions {
  std::filesystem::path matrix_path;
  bool json = false;
};

struct TightOptions {
  std::filesystem::path matrix_path;
  std::optional<std::string> b_csv;  // overrides a "b" stored in the file
  std::size_t samples = 20;
  std::uint64_t seed = 0;
  bool unbounded_aux = false;
  bool json = false;
};

struct ReentrantOptions {
  std::string route_csv;
  std::string means_csv;
  std::string arrival = "1";
  std::string discipline = "fbfs";
  std::optional<std::filesystem::path> output;  // stdout when absent
};

struct WitnessOptions {
  std::filesystem::path matrix_path;
  std::filesystem::path witness_path;
  std::optional<std::string> b_csv;
  bool unbounded_aux = false;
  bool json = false;
};

int cmd_analyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err);
int cmd_classify(const ClassifyOptions& opts, std::ostream& out, std::ostream& err);
int cmd_tight(const TightOptions& opts, std::ostream& out, std::ostream& err);
int cmd_reentrant(const ReentrantOptions& opts, std::ostream& out, std::ostream& err);
int cmd_witness(const WitnessOptions& opts, std::ostream& out, std::ostream& err);

// JSON views shared with the Python bindings.
Json class_report_json(const RatMatrix& m, const ClassOptions& opts);
Json verdict_json(const TightnessVerdict& v, const RatVector& b, bool aux_bounded);
Json decision_json(const TightMatrixDecision& d);
Json verification_json(const VerificationReport& r);

/// Aligned text rendering; labels are used for rows and columns when given.
std::string format_matrix(const RatMatrix& m,
                          const std::vector<std::string>& labels = {});

}  // namespace reflecto::cli
