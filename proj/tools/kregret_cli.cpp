// kregret: regret minimizing sets over positive multi-attribute data.
//
// solve      pick a representative subset (sweep / greedy / oracle)
// evaluate   score a given subset against the dataset
// contour    emit the k-th depth contour (2D)
// plot-data  emit arrangement geometry for external plotting (2D)

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kregret/kregret.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace kregret;

double round6(double v) { return std::round(v * 1e6) / 1e6; }

json round6(const std::vector<double>& vs) {
  json arr = json::array();
  for (double v : vs) arr.push_back(round6(v));
  return arr;
}

struct CommonOpts {
  std::string input;
  std::string id_col;
  std::vector<std::string> cols;
  std::size_t k = 1;
  double tau = 1.0;
  std::string metric = "ratio";
  bool normalize_on = true;
  std::string out;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--input", o.input, "CSV input path")
      ->envname("KREGRET_INPUT")
      ->required();
  cmd->add_option("--id-col", o.id_col, "header name of the id column")
      ->envname("KREGRET_ID_COL");
  cmd->add_option("--cols", o.cols, "attribute columns, in order")
      ->delimiter(',')
      ->envname("KREGRET_COLS");
  cmd->add_option("--k", o.k, "rank threshold k")->envname("KREGRET_K");
  cmd->add_option("--tau", o.tau, "dual transform offset")->envname("KREGRET_TAU");
  cmd->add_option("--metric", o.metric, "cost metric")
      ->check(CLI::IsMember({"ratio", "distance"}))
      ->envname("KREGRET_METRIC");
  cmd->add_option("--normalize", o.normalize_on, "divide attributes by column max")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, bool>{{"on", true}, {"off", false}}))
      ->envname("KREGRET_NORMALIZE");
  cmd->add_option("--out", o.out, "output path (default stdout)")
      ->envname("KREGRET_OUT");
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"json"}))
      ->envname("KREGRET_FORMAT");
}

Metric parse_metric(const std::string& m) {
  return m == "distance" ? Metric::kDualDistance : Metric::kRegretRatio;
}

Dataset load(const CommonOpts& o) {
  std::ifstream in(o.input);
  if (!in) throw input_error("cannot open input file '" + o.input + "'");
  CsvOptions csv;
  csv.id_column = o.id_col;
  csv.columns = o.cols;
  Dataset ds = load_csv(in, csv);
  return o.normalize_on ? normalize(ds) : ds;
}

void emit(const CommonOpts& o, const json& doc) {
  if (o.out.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::ofstream out(o.out);
    if (!out) throw input_error("cannot open output file '" + o.out + "'");
    out << doc.dump(2) << "\n";
  }
}

json direction_json(const UtilityDirection& w) { return round6(w.weights); }

json tuples_json(const Dataset& ds, const std::vector<std::string>& ids) {
  json arr = json::array();
  for (const auto& id : ids) {
    const Point& p = ds[ds.index_of(id)];
    json t;
    t["id"] = p.id;
    json coords = json::array();
    for (std::size_t a = 0; a < p.coords.size(); ++a)
      coords.push_back(round6(p.coords[a] * ds.norm_factors()[a]));
    t["attributes"] = coords;
    arr.push_back(t);
  }
  return arr;
}

json exactness_json(const Exactness& e) {
  json j;
  j["exact"] = e.exact;
  if (!e.exact) j["sample_count"] = e.sample_count;
  return j;
}

int run(int argc, char** argv) {
  CLI::App app{"regret minimizing set solver"};
  app.require_subcommand(1);

  CommonOpts o;
  std::size_t m = 1;
  std::string algo = "auto";
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  std::vector<std::string> subset_ids;

  CLI::App* solve = app.add_subcommand("solve", "compute a representative subset");
  add_common(solve, o);
  solve->add_option("--m", m, "subset cardinality budget")->envname("KREGRET_M");
  solve->add_option("--algo", algo, "solver")
      ->check(CLI::IsMember({"sweep", "greedy", "oracle", "auto"}))
      ->envname("KREGRET_ALGO");
  solve->add_option("--samples", samples, "direction sample size (d >= 3)")
      ->envname("KREGRET_SAMPLES");
  solve->add_option("--seed", seed, "seed for the random greedy start")
      ->envname("KREGRET_SEED");

  CLI::App* evaluate = app.add_subcommand("evaluate", "score a subset");
  add_common(evaluate, o);
  evaluate->add_option("--ids", subset_ids, "subset ids")->delimiter(',')->required();
  evaluate->add_option("--samples", samples, "direction sample size (d >= 3)")
      ->envname("KREGRET_SAMPLES");

  CLI::App* contour = app.add_subcommand("contour", "emit the k-th depth contour (2D)");
  add_common(contour, o);

  CLI::App* plot = app.add_subcommand("plot-data", "emit arrangement geometry (2D)");
  add_common(plot, o);
  plot->add_option("--ids", subset_ids, "optional subset whose envelope to include")
      ->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  const auto t0 = std::chrono::steady_clock::now();
  const Dataset ds = load(o);
  const Metric metric = parse_metric(o.metric);

  json doc;
  if (solve->parsed()) {
    std::string chosen_algo = algo;
    if (chosen_algo == "auto") chosen_algo = ds.dim() == 2 ? "sweep" : "greedy";
    Solution sol;
    if (chosen_algo == "sweep") {
      sol = solve_2d(ds, o.k, m, o.tau, metric);
    } else if (chosen_algo == "oracle") {
      BruteForceOptions bo;
      bo.metric = metric;
      bo.tau = o.tau;
      bo.sample_count = samples;
      sol = brute_force_optimal(ds, o.k, m, bo);
    } else {
      GreedyConfig gc;
      gc.metric = metric;
      gc.tau = o.tau;
      gc.sample_count = samples;
      if (seed != 0) {
        gc.seed = GreedyConfig::Seed::kRandom;
        gc.rng_seed = seed;
      }
      sol = solve_greedy(ds, o.k, m, gc);
    }
    doc["command"] = "solve";
    doc["algorithm"] = sol.algorithm;
    doc["k"] = o.k;
    doc["m"] = m;
    doc["metric"] = to_string(metric);
    doc["chosen_ids"] = sol.ids;
    doc["chosen_tuples"] = tuples_json(ds, sol.ids);
    doc["cost"] = round6(sol.cost);
    doc["worst_direction"] = direction_json(sol.worst_direction);
    doc["exactness"] = exactness_json(sol.exactness);
    if (sol.guard_tripped) doc["guard_tripped"] = true;
  } else if (evaluate->parsed()) {
    const std::vector<std::size_t> subset = ds.indices_of(subset_ids);
    RegretReport r;
    if (ds.dim() == 2) {
      r = max_ratio_exact_2d(ds, subset, o.k, metric, o.tau);
    } else {
      const DirectionSample sample = make_direction_sample(ds.dim(), samples);
      r = max_ratio_sampled(ds, subset, o.k, sample, metric, o.tau);
    }
    doc["command"] = "evaluate";
    doc["k"] = o.k;
    doc["metric"] = to_string(metric);
    doc["subset_ids"] = r.subset_ids;
    doc["max_value"] = round6(r.max_value);
    doc["argmax_direction"] = direction_json(r.argmax_direction);
    doc["exactness"] = exactness_json(r.exactness);
  } else if (contour->parsed()) {
    const Contour c = compute_contour(ds, o.k, o.tau);
    doc["command"] = "contour";
    doc["k"] = o.k;
    doc["tau"] = round6(o.tau);
    json segs = json::array();
    for (const auto& s : c.segments()) {
      json seg;
      seg["id"] = c.lines()[s.line].source_id;
      seg["theta_lo"] = round6(s.theta_lo);
      seg["theta_hi"] = round6(s.theta_hi);
      segs.push_back(seg);
    }
    doc["segments"] = segs;
    json verts = json::array();
    for (const auto& v : c.vertices()) {
      json vx;
      vx["theta"] = round6(v.angle.theta);
      vx["x"] = round6(v.x);
      vx["y"] = round6(v.y);
      vx["id_before"] = c.lines()[v.line_before].source_id;
      vx["id_after"] = c.lines()[v.line_after].source_id;
      verts.push_back(vx);
    }
    doc["vertices"] = verts;
  } else {
    if (ds.dim() != 2) throw unsupported_dimension_error(ds.dim());
    const std::vector<DualLine> lines = to_dual_lines(ds, o.tau);
    doc["command"] = "plot-data";
    doc["k"] = o.k;
    doc["tau"] = round6(o.tau);
    json jl = json::array();
    for (const DualLine& l : lines) {
      json e;
      e["id"] = l.source_id;
      e["x_intercept"] = round6(l.tau / l.coeffs[0]);
      e["y_intercept"] = round6(l.tau / l.coeffs[1]);
      jl.push_back(e);
    }
    doc["lines"] = jl;
    json xs = json::array();
    for (std::size_t i = 0; i < lines.size(); ++i) {
      for (std::size_t j = i + 1; j < lines.size(); ++j) {
        const auto angle = intersection_angle(lines[i], lines[j]);
        if (!angle) continue;
        const UtilityDirection w = angle->direction();
        const double d = ray_distance(lines[i], w);
        json e;
        e["ids"] = {lines[i].source_id, lines[j].source_id};
        e["theta"] = round6(angle->theta);
        e["slope"] = round6(angle->slope());
        e["x"] = round6(d * w.weights[0]);
        e["y"] = round6(d * w.weights[1]);
        xs.push_back(e);
      }
    }
    doc["intersections"] = xs;
    const Contour c = compute_contour(ds, o.k, o.tau);
    json segs = json::array();
    for (const auto& s : c.segments()) {
      json seg;
      seg["id"] = c.lines()[s.line].source_id;
      seg["theta_lo"] = round6(s.theta_lo);
      seg["theta_hi"] = round6(s.theta_hi);
      segs.push_back(seg);
    }
    doc["contour_segments"] = segs;
    if (!subset_ids.empty()) {
      const std::vector<std::size_t> subset = ds.indices_of(subset_ids);
      std::vector<DualLine> sub;
      for (std::size_t i : subset) sub.push_back(to_dual_line(ds[i], o.tau));
      const EnvelopeChain env = lower_envelope(sub);
      json es = json::array();
      for (const auto& s : env.segments) {
        json seg;
        seg["id"] = sub[s.line].source_id;
        seg["theta_lo"] = round6(s.theta_lo);
        seg["theta_hi"] = round6(s.theta_hi);
        es.push_back(seg);
      }
      doc["subset_envelope"] = es;
    }
  }

  emit(o, doc);
  const auto t1 = std::chrono::steady_clock::now();
  std::cerr << "wall_time_ms="
            << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
            << "\n";
  return 0;
}

json error_json(const std::string& kind, const std::string& what) {
  json doc;
  doc["error"]["kind"] = kind;
  doc["error"]["message"] = what;
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const guard_error& e) {
    std::cerr << error_json("guard", e.what()).dump(2) << "\n";
    return 4;
  } catch (const domain_error& e) {
    std::cerr << error_json("domain", e.what()).dump(2) << "\n";
    return 3;
  } catch (const input_error& e) {
    std::cerr << error_json("input", e.what()).dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << error_json("internal", e.what()).dump(2) << "\n";
    return 1;
  }
}
