#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "flagforge/constructions.hpp"
#include "flagforge/enumeration.hpp"
#include "flagforge/exactlin.hpp"
#include "flagforge/flagcalc.hpp"

namespace flagforge {

inline constexpr const char* kConvention = "count-v1";

struct Problem {
  int k = 3;
  int l = 3;
  int order = 3;
  std::vector<SmallGraph> extra_forbidden;
  std::string convention = kConvention;

  Admissibility admissibility() const { return Admissibility{l, extra_forbidden}; }
};

struct Certificate {
  Problem problem;
  Rational claimed_bound;
  std::vector<SmallGraph> admissible_graphs;
  std::vector<TypeSpec> types;
  std::vector<std::vector<FlagSpec>> flags;
  std::vector<PSDBlock> blocks;
};

// Malformed certificate; `path` is a JSON pointer to the offending value.
class CertificateError : public ParseError {
 public:
  CertificateError(const std::string& path, const std::string& message)
      : ParseError(path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Validates schema, admissibility, dimensions and positivity of Q'. With
// `check_complete`, the admissible list must also be the full enumeration.
Certificate parse_certificate(std::string_view text, bool check_complete = true);
Certificate load_certificate(const std::string& path, bool check_complete = true);
nlohmann::json certificate_to_json(const Certificate& cert);

struct StageResult {
  std::string name;
  bool passed = false;
  bool ran = false;
  std::vector<std::string> details;
};

struct VerificationReport {
  std::vector<StageResult> stages;
  std::optional<BoundReport> bound;
  std::vector<std::string> graph_keys;
  std::vector<std::string> sharp_keys;
  bool verified = false;

  nlohmann::json to_json() const;
};

VerificationReport verify(const Certificate& cert, Execution ex = Execution::parallel);

enum ExitCode { kVerified = 0, kFailed = 1, kMalformed = 2 };

struct SharpComparison {
  std::vector<std::string> certificate_sharp;
  std::vector<std::string> construction_sharp;
  std::vector<std::string> missing;  // construction-sharp but not certificate-sharp
  bool contained = false;
};

SharpComparison sharp_report(const Certificate& cert, const PatternGraph& pattern,
                             Execution ex = Execution::parallel);

}  // namespace flagforge
