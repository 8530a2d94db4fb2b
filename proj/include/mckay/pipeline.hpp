#pragma once

// End-to-end runs behind the command-line tool: build a presentation, run
// its verification suite, and collect a report.

#include <string>
#include <vector>

#include "mckay/io.hpp"

namespace mckay {

struct RunOptions {
  int w_max = 4;
  int w_cap = 8;
  int cohomology_w_max = 3;  // clamped to w_max
  std::size_t path_budget = default_path_budget;
};

/// Throws ValidationError when w_max is negative or above the cap.
void check_options(const RunOptions& opts);

struct Check {
  std::string name;
  bool ok = true;
  std::vector<std::string> failures;
};

struct Report {
  std::string command;
  std::string subject;
  Json facts = Json::object();
  std::vector<Check> checks;

  bool passed() const;
  Json to_json() const;
  std::string to_text() const;
};

struct PolyRun {
  PolyQP qp;
  Report report;
};
PolyRun run_poly_qp(int n, const RunOptions& opts = {});

struct GlRun {
  TensorDGA dga;
  GinzburgPresentation quotient;  // vertex 0 deleted
  Report report;
};
GlRun run_gl_dga(const GroupDocument& doc, const RunOptions& opts = {});

struct McKayRun {
  McKayQP qp;
  GinzburgPresentation deleted;  // vertex 0 deleted
  bool isolated = false;
  Report report;
};
McKayRun run_mckay(const GroupDocument& doc, const RunOptions& opts = {});

struct H0Run {
  H0Presentation h0;
  Report report;
};
/// Degree-0 presentation of the McKay quiver with potential of the group,
/// or of the polynomial one when doc is null.
H0Run run_h0(const GroupDocument* doc, int n, const RunOptions& opts = {});

Report run_verify(const PresentationDocument& doc, const RunOptions& opts = {});

Report run_info(const GroupDocument& doc);

/// path_budget from the environment variable MCKAYQP_PATH_BUDGET when set.
std::size_t path_budget_from_env(std::size_t fallback);

}  // namespace mckay
