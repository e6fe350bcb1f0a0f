#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tandev/curve.hpp"
#include "tandev/spec.hpp"

namespace tandev::cli {

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2 };

struct CurveOptions {
  std::string spec_file;
  std::string builtin;
  std::optional<Interval> t_range;
  int jet_order = kDefaultJetOrder;
  double rank_eps = kDefaultRankEps;
  RankMode mode = RankMode::automatic;
};

CurveSpec load_curve(const CurveOptions& o);

struct AnalyzeOptions {
  CurveOptions curve;
  int samples = 11;
  std::string out_dir;  // optional: writes trace.csv and analyze.json
};
int cmd_analyze(const AnalyzeOptions& o, std::ostream& out, std::ostream& err);

struct ParallelOptions {
  CurveOptions curve;
  std::vector<double> r{0.0};
  // Direction in the normal space for p >= 3 (defaults to the first normal).
  std::vector<double> r_dir;
  Interval s_range{-1, 1};
  int samples = 201;
  int jobs = 0;
  std::string out_dir = ".";
  // Output names inside out_dir; a sweep over several r inserts _000, _001, ...
  // before the extension. Empty disables that output.
  std::string mesh = "parallel.obj";
  std::string locus = "locus.csv";
  std::string directrix = "directrix.json";
};
int cmd_parallel(const ParallelOptions& o, std::ostream& out, std::ostream& err);

struct ClassifyOptions {
  CurveOptions curve;
  double t = 0.0;
  std::vector<double> r;
  std::optional<double> s;
};
int cmd_classify(const ClassifyOptions& o, std::ostream& out, std::ostream& err);

struct MeshOptions {
  CurveOptions curve;
  std::string normal_form;
  Interval s_range{-1, 1};
  int samples = 201;
  std::string out_file;  // stdout when empty
};
int cmd_mesh(const MeshOptions& o, std::ostream& out, std::ostream& err);

struct VerifyOptions {
  std::string suite = "all";
  int jobs = 0;
  std::string out_file;  // JSON report
};
int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err);

// Full command line, including the program name in args[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tandev::cli
