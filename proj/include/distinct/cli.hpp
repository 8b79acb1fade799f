#ifndef DISTINCT_CLI_HPP
#define DISTINCT_CLI_HPP

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "distinct/distinct.hpp"
#include "distinct/io.hpp"

namespace distinct::cli {

enum ExitCode : int { kOk = 0, kUnexpected = 1, kInvalid = 2, kEntireDomain = 3 };

struct Options {
  double tol = kDefaultTol;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  std::string format = "json";
  bool timing = false;
};

namespace detail {

using io::Json;

struct Outcome {
  Json verdict;
  int code = kOk;
};

inline Json locus_json(const Locus& locus, const Domain& domain) {
  Json v;
  if (locus.is_entire()) {
    v["kind"] = "entire_domain";
    return v;
  }
  v["kind"] = "finite_set";
  Json points = Json::array();
  for (const auto& p : locus.points()) {
    Json jp;
    // Real-interval loci are real by construction.
    if (domain.is_real_interval()) {
      jp["value"] = p.value.real();
    } else {
      jp["value"] = io::detail::complex_json(p.value);
    }
    jp["residual"] = p.residual;
    points.push_back(std::move(jp));
  }
  v["points"] = std::move(points);
  return v;
}

inline Outcome locus_outcome(const Locus& locus, const Domain& domain) {
  return {locus_json(locus, domain), locus.is_entire() ? kEntireDomain : kOk};
}

inline Json segment_json(const SegmentReport& r, double gap) {
  Json v;
  v["kind"] = "segment";
  v["exceptional_ts"] = r.exceptional_ts;
  v["s"] = r.s;
  v["t_star"] = r.t_star;
  v["result"] = io::detail::entries_json(r.result);
  v["min_gap"] = gap;
  return v;
}

inline int severity(int code) {
  switch (code) {
    case kUnexpected: return 3;
    case kInvalid: return 2;
    case kEntireDomain: return 1;
    default: return 0;
  }
}

/// Runs one document, mapping library errors to exit codes.
inline Outcome guarded(const std::function<Outcome()>& body, std::ostream& err, const std::string& where) {
  try {
    return body();
  } catch (const ValidationError& e) {
    err << "error: " << where << e.what() << "\n";
    return {Json{{"error", e.what()}}, kInvalid};
  } catch (const PreconditionError& e) {
    err << "error: " << where << e.what() << "\n";
    return {Json{{"error", e.what()}}, kInvalid};
  } catch (const std::exception& e) {
    err << "error: " << where << e.what() << "\n";
    return {Json{{"error", e.what()}}, kUnexpected};
  }
}

/// A file holding one document, or a batch file holding an array of them.
/// Documents run in order, each isolated from the others' failures.
inline std::pair<Json, int> run_documents(const std::string& file, const std::function<Outcome(const Json&, const std::string&)>& one,
                                          std::ostream& err) {
  Json doc;
  try {
    doc = io::read_file(file);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return {Json{{"error", e.what()}}, kInvalid};
  }
  if (!doc.is_array()) {
    Outcome o = guarded([&] { return one(doc, "$"); }, err, "");
    return {std::move(o.verdict), o.code};
  }
  Json verdicts = Json::array();
  int code = kOk;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string path = "$[" + std::to_string(i) + "]";
    Outcome o = guarded([&] { return one(doc[i], path); }, err, path + ": ");
    if (severity(o.code) > severity(code)) code = o.code;
    verdicts.push_back(std::move(o.verdict));
  }
  return {std::move(verdicts), code};
}

inline ComplexMatrix read_matrix(const std::string& file) { return io::matrix_from_json(io::read_file(file)); }

inline GenPolyClass resolve_class(const std::string& spec, std::size_t k, std::size_t m, std::size_t n) {
  if (spec == "coordinate") {
    if (k == 0 || k > m * n) throw ValidationError("--k", "coordinate class needs 1 <= k <= m n");
    return GenPolyClass::coordinate(k, m, n);
  }
  if (spec == "charpoly") {
    if (m != n) throw ValidationError("--class", "charpoly class needs square matrices");
    return GenPolyClass::charpoly(n);
  }
  return io::class_from_json(io::read_file(spec));
}

}  // namespace detail

/// Parses argv, runs one subcommand, writes the report and returns the exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using detail::Json;
  using detail::Outcome;

  CLI::App app{"Exceptional parameters and distinctness-restoring perturbations for matrix families", "distinct"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--tol", opt.tol, "tolerance for locus classification")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", opt.seed, "seed for random confirmation points");
  app.add_option("--out", opt.out, "write the report here instead of stdout");
  app.add_option("--format", opt.format, "report format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--timing", opt.timing, "add wall time to the report (breaks byte-identical output)");

  std::string mode;
  std::string input;
  std::string class_spec;
  std::string action;
  std::string b_file;
  std::string to_file;
  double eps = 0.0;
  int grid = 101;
  std::size_t k = 2;
  bool nonsingular = false;

  auto* locus = app.add_subcommand("locus", "classify where a family loses distinctness or invertibility");
  locus->add_option("mode", mode, "eigen | singular | det")->required()->check(CLI::IsMember({"eigen", "singular", "det"}));
  locus->add_option("family", input, "family document")->required();

  auto* perturb = app.add_subcommand("perturb", "small perturbation giving distinct eigenvalues or singular values");
  perturb->add_option("mode", mode, "eigen | singular")->required()->check(CLI::IsMember({"eigen", "singular"}));
  perturb->add_option("matrix", input, "matrix document A")->required();
  perturb->add_option("--eps", eps, "Frobenius budget for S");
  perturb->add_option("--b-matrix", b_file, "real diagonal direction B (default diag(1..n))");
  perturb->add_option("--to", to_file, "move along (1 - t) A + t B toward this endpoint instead");
  perturb->add_flag("--nonsingular", nonsingular, "with --to in eigen mode, also require nonsingularity");

  auto* pattern = app.add_subcommand("pattern", "density of distinct-singular-value matrices in S(P)");
  pattern->add_option("pattern", input, "pattern document")->required();

  auto* scan = app.add_subcommand("scan", "minimum gap on a uniform grid");
  scan->add_option("family", input, "family document over a real interval")->required();
  scan->add_option("--mode", mode, "eigen | singular")->check(CLI::IsMember({"eigen", "singular"}))->default_val("eigen");
  scan->add_option("--grid", grid, "number of grid points")->default_val(101);

  auto* genpoly = app.add_subcommand("genpoly", "repeated zeros for a generalized polynomial class");
  genpoly->add_option("action", action, "locus | perturb")->required()->check(CLI::IsMember({"locus", "perturb"}));
  genpoly->add_option("class", class_spec, "class document, or coordinate | charpoly")->required();
  genpoly->add_option("input", input, "family (locus) or matrix A (perturb) document")->required();
  genpoly->add_option("--k", k, "degree of the built-in coordinate class")->default_val(2);
  genpoly->add_option("--b-matrix", b_file, "segment endpoint B (perturb)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalid;
  }

  const auto start = std::chrono::steady_clock::now();
  Json command;
  std::pair<Json, int> result;
  auto* sub = app.get_subcommands().front();
  command["name"] = sub->get_name();

  if (sub == locus) {
    command["mode"] = mode;
    command["family"] = input;
    result = detail::run_documents(
        input,
        [&](const Json& doc, const std::string& path) {
          const MatrixPoly f = io::family_from_json(doc, path);
          if (mode == "eigen") return detail::locus_outcome(repeated_eigenvalue_locus(f, opt.tol, opt.seed), f.domain());
          if (mode == "singular")
            return detail::locus_outcome(repeated_singular_value_locus(f, opt.tol, opt.seed), f.domain());
          return detail::locus_outcome(singular_matrix_locus(f, opt.tol, opt.seed), f.domain());
        },
        err);
  } else if (sub == perturb) {
    command["mode"] = mode;
    command["matrix"] = input;
    const bool eigen = mode == "eigen";
    if (to_file.empty()) {
      command["eps"] = eps;
      if (!b_file.empty()) command["b_matrix"] = b_file;
    } else {
      command["to"] = to_file;
      if (nonsingular) command["nonsingular"] = true;
    }
    auto gap = [&](const ComplexMatrix& m) { return eigen ? min_eigen_gap(m) : min_singular_gap(m); };
    result = detail::run_documents(
        input,
        [&](const Json& doc, const std::string& path) {
          const ComplexMatrix a = io::matrix_from_json(doc, path);
          if (!to_file.empty()) {
            const ComplexMatrix b = detail::read_matrix(to_file);
            const SegmentReport r = eigen ? distinct_eigen_on_segment(a, b, nonsingular, opt.tol, opt.seed)
                                          : distinct_singular_on_segment(a, b, opt.tol, opt.seed);
            return Outcome{detail::segment_json(r, gap(r.result)), kOk};
          }
          std::optional<ComplexMatrix> b;
          if (!b_file.empty()) b = detail::read_matrix(b_file);
          const ComplexMatrix s = eigen ? perturb_to_distinct_eigen(a, eps, opt.tol, b, opt.seed)
                                        : perturb_to_distinct_singular(a, eps, opt.tol, b, opt.seed);
          Json v;
          v["kind"] = "ray";
          v["S"] = io::detail::entries_json(s);
          v["norm_S"] = frobenius_norm(s);
          v["min_gap"] = gap(a + s);
          return Outcome{std::move(v), kOk};
        },
        err);
  } else if (sub == pattern) {
    command["pattern"] = input;
    result = detail::run_documents(
        input,
        [&](const Json& doc, const std::string& path) {
          const Pattern p = io::pattern_from_json(doc, path);
          const DensityVerdict d = density_distinct_singular(p);
          Json v;
          v["dense"] = d.dense;
          v["kind"] = d.kind == DensityVerdict::Kind::FullDiagonal      ? "full_diagonal"
                      : d.kind == DensityVerdict::Kind::DeletedDiagonal ? "deleted_diagonal"
                                                                        : "none";
          if (d.deleted) v["deleted"] = *d.deleted;
          if (d.dense) {
            const ComplexMatrix w = witness_matrix(d, p);
            Json rows = Json::array();
            for (Eigen::Index i = 0; i < w.rows(); ++i) {
              Json row = Json::array();
              for (Eigen::Index j = 0; j < w.cols(); ++j) row.push_back(static_cast<long long>(w(i, j).real()));
              rows.push_back(std::move(row));
            }
            v["witness"] = std::move(rows);
            v["gram_diagonal"] = witness_gram_diagonal(d);
          }
          return Outcome{std::move(v), kOk};
        },
        err);
  } else if (sub == scan) {
    command["mode"] = mode;
    command["family"] = input;
    command["grid"] = grid;
    result = detail::run_documents(
        input,
        [&](const Json& doc, const std::string& path) {
          const MatrixPoly f = io::family_from_json(doc, path);
          Json samples = Json::array();
          for (const auto& s : grid_scan(f, mode == "eigen" ? GapMode::Eigen : GapMode::Singular, grid))
            samples.push_back(Json::array({s.x, s.min_gap}));
          return Outcome{Json{{"samples", std::move(samples)}}, kOk};
        },
        err);
  } else {
    command["action"] = action;
    command["class"] = class_spec;
    command["input"] = input;
    if (class_spec == "coordinate") command["k"] = k;
    if (action == "perturb") command["b_matrix"] = b_file;
    result = detail::run_documents(
        input,
        [&](const Json& doc, const std::string& path) {
          if (action == "locus") {
            const MatrixPoly f = io::family_from_json(doc, path);
            const GenPolyClass p = detail::resolve_class(class_spec, k, static_cast<std::size_t>(f.rows()),
                                                         static_cast<std::size_t>(f.cols()));
            return detail::locus_outcome(repeated_zero_locus(f, p, opt.tol, opt.seed), f.domain());
          }
          if (b_file.empty()) throw ValidationError("--b-matrix", "genpoly perturb needs the segment endpoint B");
          const ComplexMatrix a = io::matrix_from_json(doc, path);
          const GenPolyClass p = detail::resolve_class(class_spec, k, static_cast<std::size_t>(a.rows()),
                                                       static_cast<std::size_t>(a.cols()));
          const SegmentReport r = perturb_to_distinct_zeros(a, detail::read_matrix(b_file), p, opt.tol, opt.seed);
          const auto z = distinct::detail::raw_zeros(eval_genpoly(p, r.result));
          return Outcome{detail::segment_json(r, min_pairwise_gap(std::span<const Complex>(z))), kOk};
        },
        err);
  }

  if (result.first.is_object() && result.first.contains("error") && result.first.size() == 1) return result.second;

  Json report;
  report["command"] = std::move(command);
  report["tol"] = opt.tol;
  report["seed"] = opt.seed;
  const char* key = result.first.is_array() ? "verdicts" : "verdict";
  report[key] = std::move(result.first);
  if (opt.timing)
    report["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::string text = opt.format == "json" ? io::dump(report) + "\n" : io::dump_text(report);
  if (opt.out.empty()) {
    out << text;
  } else {
    std::ofstream file(opt.out);
    if (!file) {
      err << "error: cannot write " << opt.out << "\n";
      return kInvalid;
    }
    file << text;
  }
  return result.second;
}

}  // namespace distinct::cli

#endif  // DISTINCT_CLI_HPP
