#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rankcover/bench.hpp"
#include "rankcover/errors.hpp"
#include "rankcover/grid_map.hpp"
#include "rankcover/gtsp.hpp"
#include "rankcover/io.hpp"
#include "rankcover/lp.hpp"
#include "rankcover/lp_solve.hpp"
#include "rankcover/mapgen.hpp"
#include "rankcover/oracle.hpp"
#include "rankcover/plan.hpp"
#include "rankcover/svg.hpp"

namespace rankcover {

enum ExitCode : int { kExitOk = 0, kExitFormat = 2, kExitCertificate = 3, kExitNoPath = 4 };

struct RunConfig {
  std::string input;
  std::string format = "auto";  // ascii | pgm | auto (by extension)
  int tool_width_px = 1;
  double resolution = 50.0;  // cm per map pixel
  int pgm_threshold = 128;
  MotionModel motion;
  std::uint64_t seed = 0;
  double time_budget_s = 1.0;
  bool open = false;
  bool cross_check = false;
  std::string json_out;  // "-" for stdout
  std::string svg_out;
  std::string lp_dump;
  std::string gtsp_dump;

  void validate() const {
    if (tool_width_px < 1) throw ContractError("tool width must be >= 1 pixel");
    if (!(time_budget_s > 0.0)) throw ContractError("time budget must be > 0");
    if (!(resolution > 0.0)) throw ContractError("resolution must be > 0");
    if (format != "auto" && format != "ascii" && format != "pgm")
      throw ContractError("format must be ascii, pgm or auto");
    motion.validate();
  }
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Writes to `path` ("-" is `out`) through a callback.
template <class Fn>
void write_output(const std::string& path, std::ostream& out, Fn fn) {
  if (path == "-") {
    fn(out);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  fn(f);
  if (!f) throw IoError("write failed: " + path);
}

inline bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace detail

// `format` is ascii, pgm or auto (PGM by extension or magic number).
inline GridMap load_map(const std::string& path, const std::string& format = "auto", int pgm_threshold = 128) {
  const std::string bytes = detail::read_file(path);
  const bool pgm = format == "pgm" || (format == "auto" && (detail::ends_with(path, ".pgm") ||
                                                            bytes.rfind("P2", 0) == 0 || bytes.rfind("P5", 0) == 0));
  return pgm ? parse_pgm(std::string_view(bytes), pgm_threshold) : parse_ascii_map(bytes);
}

namespace detail {

inline IOP load_iop(const RunConfig& cfg) {
  GridMap map = load_map(cfg.input, cfg.format, cfg.pgm_threshold);
  map.resolution = cfg.resolution;
  return build_iop(map, cfg.tool_width_px);
}

inline double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Where the one-line summary goes: stdout, unless JSON is being streamed there.
inline std::ostream& summary_stream(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return cfg.json_out == "-" ? err : out;
}

inline std::string fmt(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

template <class Fn>
int guarded(std::ostream& err, Fn fn) {
  try {
    return fn();
  } catch (const CertificateError& e) {
    err << "error: " << e.what() << '\n';
    return kExitCertificate;
  } catch (const NoPathError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNoPath;
  } catch (const FormatError& e) {
    err << "error: " << e.what();
    if (e.position() != FormatError::npos) err << " (byte " << e.position() << ')';
    err << '\n';
    return kExitFormat;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFormat;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFormat;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFormat;
  }
}

inline Partition partition_checked(const IOP& iop, const RunConfig& cfg, std::ostream& out, std::ostream& err,
                                   double* lp_time, std::optional<int>* oracle) {
  if (iop.empty()) err << "warning: the map yields an empty IOP at tool width " << cfg.tool_width_px << " px\n";
  if (!cfg.lp_dump.empty())
    write_output(cfg.lp_dump, out, [&](std::ostream& o) { write_lp_format(o, build_lp(iop)); });
  const auto t0 = std::chrono::steady_clock::now();
  Partition p = partition_min_ranks(iop);
  *lp_time = since(t0);
  if (cfg.cross_check) {
    const OracleResult o = mincut_min_ranks(iop);
    if (o.min_ranks != p.objective)
      throw CertificateError("min-cut oracle found " + std::to_string(o.min_ranks) + " ranks, LP found " +
                             std::to_string(p.objective));
    *oracle = o.min_ranks;
  }
  return p;
}

}  // namespace detail

inline int cmd_partition(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    cfg.validate();
    const IOP iop = detail::load_iop(cfg);
    double lp_time = 0.0;
    std::optional<int> oracle;
    const Partition p = detail::partition_checked(iop, cfg, out, err, &lp_time, &oracle);
    if (!cfg.json_out.empty())
      detail::write_output(cfg.json_out, out, [&](std::ostream& o) {
        o << partition_to_json(iop, p.assignment, p.ranks, p.objective, oracle).dump(2) << '\n';
      });
    if (!cfg.svg_out.empty())
      detail::write_output(cfg.svg_out, out, [&](std::ostream& o) { write_partition_svg(o, iop, p.ranks); });
    std::ostream& s = detail::summary_stream(cfg, out, err);
    s << "n_cells=" << iop.size() << " n_ranks=" << p.objective;
    if (oracle) s << " oracle_ranks=" << *oracle;
    s << " lp_time=" << detail::fmt(lp_time, 4) << '\n';
    return static_cast<int>(kExitOk);
  });
}

inline int cmd_plan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    cfg.validate();
    const IOP iop = detail::load_iop(cfg);
    double lp_time = 0.0;
    std::optional<int> oracle;
    const Partition p = detail::partition_checked(iop, cfg, out, err, &lp_time, &oracle);

    const auto t0 = std::chrono::steady_clock::now();
    const GtspInstance inst = build_gtsp(p.ranks, iop, cfg.motion);
    if (!cfg.gtsp_dump.empty())
      detail::write_output(cfg.gtsp_dump, out, [&](std::ostream& o) { write_gtsplib(o, inst); });
    GtspOptions opt;
    opt.seed = cfg.seed;
    opt.time_budget_s = cfg.time_budget_s;
    opt.closed = !cfg.open;
    const GtspTour tour = solve_gtsp(inst, opt);
    const double gtsp_time = detail::since(t0);
    const CoveragePlan plan = assemble_plan(iop, p.ranks, tour, cfg.motion);

    if (!cfg.json_out.empty())
      detail::write_output(cfg.json_out, out,
                           [&](std::ostream& o) { o << plan_to_json(iop, plan).dump(2) << '\n'; });
    if (!cfg.svg_out.empty())
      detail::write_output(cfg.svg_out, out, [&](std::ostream& o) { write_plan_svg(o, iop, plan); });
    detail::summary_stream(cfg, out, err)
        << "n_ranks=" << plan.metrics.n_ranks << " n_turns=" << plan.metrics.n_turns
        << " tour_time=" << detail::fmt(plan.metrics.tour_time, 3) << " lp_time=" << detail::fmt(lp_time, 4)
        << " gtsp_time=" << detail::fmt(gtsp_time, 4) << '\n';
    return static_cast<int>(kExitOk);
  });
}

struct GenConfig {
  MapGenOptions map;
  std::string output = "-";
};

inline int cmd_gen(const GenConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const std::string text = generate_ascii_map(cfg.map);
    detail::write_output(cfg.output, out, [&](std::ostream& o) { o << text; });
    return static_cast<int>(kExitOk);
  });
}

struct BenchCommandConfig {
  BenchConfig bench;
  std::string json_out;
};

// Table on `out`; exit 3 if a finished row has the LP losing to the baseline
// or disagreeing with its oracle.
inline int cmd_bench(const BenchCommandConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (cfg.bench.tool_width_px < 1) throw ContractError("tool width must be >= 1 pixel");
    const BenchReport report = run_bench(cfg.bench);
    print_bench_table(out, report);
    if (!cfg.json_out.empty())
      detail::write_output(cfg.json_out, out, [&](std::ostream& o) { o << bench_to_json(report).dump(2) << '\n'; });
    for (const BenchRow& r : report.rows)
      if (!r.ok()) err << "warning: " << r.id << ": " << r.error << '\n';
    if (!report.invariant_holds()) {
      err << "error: benchmark invariant violated\n";
      return static_cast<int>(kExitCertificate);
    }
    return static_cast<int>(kExitOk);
  });
}

}  // namespace rankcover
