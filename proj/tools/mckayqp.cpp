// Command-line front end: build presentations from group documents, run the
// verification suites, and write reports, JSON and DOT files.

#include <filesystem>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mckay/pipeline.hpp"

using namespace mckay;

namespace {

struct Config {
  std::string command;
  std::string input;
  int n = 0;
  RunOptions opts;
  long long path_budget = 0;
  std::string out_dir;
  std::vector<std::string> emit{"report"};
  bool show_all = false;
  bool quiet = false;
};

struct Artifacts {
  std::string stem;
  Json presentation;
  std::string dot;
  const Report* report = nullptr;
};

std::string stem_of(const std::string& input, const std::string& fallback) {
  if (input.empty()) return fallback;
  return std::filesystem::path(input).stem().string();
}

int emit(const Config& cfg, const Artifacts& art) {
  const std::set<std::string> want(cfg.emit.begin(), cfg.emit.end());
  if (!cfg.quiet) std::cout << art.report->to_text();
  if (!cfg.out_dir.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    const std::filesystem::path dir(cfg.out_dir);
    auto path = [&](const std::string& suffix) { return (dir / (art.stem + suffix)).string(); };
    if (want.count("report")) {
      write_text_file(path(".report.txt"), art.report->to_text());
      write_text_file(path(".report.json"), art.report->to_json().dump(2) + "\n");
    }
    if (want.count("json") && !art.presentation.is_null()) write_text_file(path(".json"), art.presentation.dump(2) + "\n");
    if (want.count("dot") && !art.dot.empty()) write_text_file(path(".dot"), art.dot);
  }
  return art.report->passed() ? 0 : 1;
}

int run(const Config& cfg) {
  RunOptions opts = cfg.opts;
  opts.path_budget = cfg.path_budget > 0 ? static_cast<std::size_t>(cfg.path_budget)
                                         : path_budget_from_env(default_path_budget);
  DotOptions dot;
  dot.show_all = cfg.show_all;
  if (cfg.command == "poly-qp") {
    const PolyRun r = run_poly_qp(cfg.n, opts);
    return emit(cfg, {"poly_qp_n" + std::to_string(cfg.n), presentation_json(r.qp.pres), quiver_dot(r.qp.pres.quiver, dot),
                      &r.report});
  }
  if (cfg.command == "gl-dga") {
    const GroupDocument doc = load_group_document(cfg.input);
    const GlRun r = run_gl_dga(doc, opts);
    return emit(cfg, {stem_of(cfg.input, "group") + "_gl", presentation_json(r.dga.pres), quiver_dot(r.dga.pres.quiver, dot),
                      &r.report});
  }
  if (cfg.command == "mckay") {
    const GroupDocument doc = load_group_document(cfg.input);
    const McKayRun r = run_mckay(doc, opts);
    return emit(cfg, {stem_of(cfg.input, "group") + "_mckay", mckay_json(r.qp), quiver_dot(r.qp.pres.quiver, dot), &r.report});
  }
  if (cfg.command == "h0") {
    if (cfg.input.empty() && cfg.n < 1) fail(ErrorCode::ValidationError, "h0 needs --input or --n");
    H0Run r;
    std::string stem;
    if (!cfg.input.empty()) {
      const GroupDocument doc = load_group_document(cfg.input);
      r = run_h0(&doc, 0, opts);
      stem = stem_of(cfg.input, "group") + "_h0";
    } else {
      r = run_h0(nullptr, cfg.n, opts);
      stem = "poly_qp_n" + std::to_string(cfg.n) + "_h0";
    }
    return emit(cfg, {stem, h0_json(r.h0), quiver_dot(r.h0.quiver, dot), &r.report});
  }
  if (cfg.command == "verify") {
    const PresentationDocument doc = load_presentation(cfg.input);
    const Report report = run_verify(doc, opts);
    return emit(cfg, {stem_of(cfg.input, "presentation") + "_verify", Json(), quiver_dot(doc.pres.quiver, dot), &report});
  }
  const GroupDocument doc = load_group_document(cfg.input);
  const Report report = run_info(doc);
  return emit(cfg, {stem_of(cfg.input, "group") + "_info", group_document_json(doc), "", &report});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Higher McKay quivers with potential and their Ginzburg dg algebras"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--wmax", cfg.opts.w_max, "Largest path weight for the Euler check")->capture_default_str();
    sub->add_option("--cohomology-wmax", cfg.opts.cohomology_w_max, "Largest weight for cohomology (clamped to --wmax)")
        ->capture_default_str();
    sub->add_option("--wcap", cfg.opts.w_cap, "Hard cap on --wmax")->capture_default_str();
    sub->add_option("--path-budget", cfg.path_budget, "Paths per weight component (env MCKAYQP_PATH_BUDGET)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out_dir, "Directory for emitted files");
    sub->add_option("--emit", cfg.emit, "Any of json, dot, report")
        ->check(CLI::IsMember({"json", "dot", "report"}))
        ->delimiter(',')
        ->capture_default_str();
    sub->add_flag("--show-all", cfg.show_all, "Draw stars and t-loops in DOT output");
    sub->add_flag("-q,--quiet", cfg.quiet, "Do not print the report");
  };

  auto* poly = app.add_subcommand("poly-qp", "Quiver with potential of the polynomial ring");
  poly->add_option("--n", cfg.n, "Number of variables")->required()->check(CLI::PositiveNumber);
  common(poly);
  auto* gl = app.add_subcommand("gl-dga", "dg tensor algebra of a finite subgroup of GL_n");
  gl->add_option("--input", cfg.input, "Group document")->required()->check(CLI::ExistingFile);
  common(gl);
  auto* mk = app.add_subcommand("mckay", "Higher McKay quiver with potential of a finite subgroup of SL_n");
  mk->add_option("--input", cfg.input, "Group document")->required()->check(CLI::ExistingFile);
  common(mk);
  auto* ver = app.add_subcommand("verify", "Re-run checks on a serialized presentation");
  ver->add_option("--input", cfg.input, "Presentation document")->required()->check(CLI::ExistingFile);
  common(ver);
  auto* h0 = app.add_subcommand("h0", "Degree-0 quiver with relations and its weight dimensions");
  h0->add_option("--input", cfg.input, "Group document")->check(CLI::ExistingFile);
  h0->add_option("--n", cfg.n, "Polynomial case in n variables")->check(CLI::PositiveNumber);
  common(h0);
  auto* info = app.add_subcommand("info", "Validate a group document and describe the group");
  info->add_option("--input", cfg.input, "Group document")->required()->check(CLI::ExistingFile);
  common(info);

  CLI11_PARSE(app, argc, argv);
  cfg.command = app.get_subcommands().front()->get_name();
  try {
    return run(cfg);
  } catch (const Error& e) {
    const ErrorCode c = e.code();
    if (c == ErrorCode::ParseError || c == ErrorCode::ValidationError || c == ErrorCode::ResourceLimit)
      std::cerr << "error: " << e.what() << "\n";
    else
      std::cerr << "error: ValidationError: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
