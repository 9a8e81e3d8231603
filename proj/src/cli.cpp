#include "brst/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "brst/cache.hpp"
#include "brst/descent.hpp"
#include "brst/errors.hpp"

#ifndef BRST_VERSION
#define BRST_VERSION "0.0.0"
#endif

namespace brst::cli {

namespace {

using nlohmann::json;

struct Loaded {
  LieAlgebra algebra;
  std::optional<SemidirectSplit> split;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open spec file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Loaded load_algebra(const JobSpec& job) {
  if (job.algebra.empty() == job.spec_file.empty())
    throw ParseError("give exactly one of --algebra and --spec-file");
  std::optional<Loaded> out;
  if (!job.algebra.empty()) {
    out.emplace(Loaded{builtin_algebra(job.algebra), default_split(job.algebra)});
  } else {
    const std::string text = read_file(job.spec_file);
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
      const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
      throw ParseError(job.spec_file + ":" + std::to_string(line) + ": " + e.what());
    }
    try {
      out.emplace(Loaded{LieAlgebra::from_json(j), std::nullopt});
      if (j.contains("split")) {
        if (!j["split"].is_string()) throw ParseError("algebra spec: field 'split' must be a string like \"K=0;J=1\"");
        out->split = SemidirectSplit::parse(j["split"].get<std::string>(), out->algebra.dim());
      }
    } catch (const json::exception& e) {
      throw ParseError(job.spec_file + ": " + e.what());
    }
  }
  if (!job.split.empty()) out->split = SemidirectSplit::parse(job.split, out->algebra.dim());
  return std::move(*out);
}

void require_valid(const Loaded& l) {
  if (!validate(l.algebra).ok()) throw ValidationError("algebra '" + l.algebra.name() + "' violates antisymmetry or Jacobi");
}

void certify_split(Loaded& l) {
  if (!l.split) return;
  const auto cert = verify_semidirect(l.algebra, *l.split);
  if (!cert.ok) throw ValidationError("split " + l.split->to_string() + " rejected: " + cert.failure);
  l.split->abelian_ideal = cert.ideal_abelian;
}

Scheme scheme_for(const JobSpec& job, Scheme fallback) {
  return job.scheme.empty() ? fallback : parse_scheme(job.scheme);
}

TablePtr table_for(Loaded& l, Scheme scheme) {
  require_valid(l);
  certify_split(l);
  return GeneratorTable::make(l.algebra, l.split, scheme);
}

int max_ghost(const JobSpec& job, const LieAlgebra& alg) {
  return job.max_ghost ? *job.max_ghost : 2 * static_cast<int>(alg.dim());
}

std::optional<Grading> grading_by_name(std::string_view name) {
  for (int g = 0; g < kGradingCount; ++g)
    if (name == grading_name(static_cast<Grading>(g))) return static_cast<Grading>(g);
  return std::nullopt;
}

int parse_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ParseError(what + ": '" + s + "' is not an integer");
  return v;
}

SliceSpec parse_slice(const std::vector<std::string>& items) {
  SliceSpec s;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("slice entry '" + item + "' must be grading=value or grading=lo..hi");
    const std::string name = item.substr(0, eq), value = item.substr(eq + 1);
    const auto g = grading_by_name(name);
    if (!g) throw ParseError("unknown grading '" + name + "'");
    const auto dots = value.find("..");
    if (dots == std::string::npos) {
      s.set(*g, parse_int(value, name));
    } else {
      s.set(*g, parse_int(value.substr(0, dots), name), parse_int(value.substr(dots + 2), name));
    }
  }
  return s;
}

json matrix_json(const RationalMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

// ---- subcommands -----------------------------------------------------------

json cmd_validate(const JobSpec& job) {
  Loaded l = load_algebra(job);
  const auto report = validate(l.algebra);
  json violations = json::array();
  for (const auto& v : report.violations) {
    json idx = json::array(), labels = json::array();
    for (int i : v.indices) {
      if (i < 0) continue;
      idx.push_back(i);
      labels.push_back(l.algebra.basis()[static_cast<std::size_t>(i)]);
    }
    violations.push_back({{"kind", v.kind == Violation::Kind::jacobi ? "jacobi" : "antisymmetry"},
                          {"indices", idx},
                          {"labels", labels},
                          {"value", to_string(v.value)}});
  }
  json j = {{"algebra", l.algebra.name()}, {"dim", l.algebra.dim()}, {"valid", report.ok()}, {"violations", violations}};
  if (report.ok() && l.split) {
    const auto cert = verify_semidirect(l.algebra, *l.split);
    j["split"] = {{"split", l.split->to_string()},
                  {"ok", cert.ok},
                  {"failure", cert.failure},
                  {"subalgebra_closed", cert.subalgebra_closed},
                  {"ideal_stable", cert.ideal_stable},
                  {"ideal_closed", cert.ideal_closed},
                  {"ideal_abelian", cert.ideal_abelian},
                  {"subalgebra_killing_rank", cert.subalgebra_killing_rank}};
  }
  return j;
}

json cmd_killing(const JobSpec& job) {
  Loaded l = load_algebra(job);
  require_valid(l);
  const BilinearForm k = killing_form(l.algebra);
  return {{"algebra", l.algebra.name()},
          {"basis", l.algebra.basis()},
          {"matrix", matrix_json(k.matrix)},
          {"rank", k.rank()},
          {"nondegenerate", k.nondegenerate()},
          {"invariant", check_invariant_metric(l.algebra, k).invariant}};
}

json cmd_cohomology(const JobSpec& job, Loaded& l) {
  const Scheme scheme = scheme_for(job, Scheme::ce_ghost);
  const TablePtr table = table_for(l, scheme);
  const Derivation d = build_operator(job.op.empty() ? "gamma" : job.op, table);
  SliceSpec base = parse_slice(job.slice);
  if (scheme != Scheme::ce_ghost && !base.get(Grading::curvatures))
    base.set(Grading::curvatures, 0, job.max_curv_degree);
  json j = {{"operator", d.name()}, {"scheme", scheme_name(scheme)}};
  if (job.ghost) {
    base.set(Grading::ghost, *job.ghost);
    j["cohomology"] = cohomology(d, base).to_json();
    return j;
  }
  json by_ghost = json::array(), dims = json::array();
  for (int g = 0; g <= max_ghost(job, l.algebra); ++g) {
    SliceSpec s = base;
    s.set(Grading::ghost, g);
    const CohomologyBasis h = cohomology(d, s);
    dims.push_back(h.dim());
    by_ghost.push_back(h.to_json());
  }
  j["dims"] = dims;
  j["by_ghost"] = by_ghost;
  return j;
}

HSOptions hs_options(const JobSpec& job) {
  HSOptions o;
  o.module = parse_module(job.module);
  o.max_curvature = job.max_curv_degree;
  o.jobs = job.jobs;
  return o;
}

json cmd_hs_table(const JobSpec& job, Loaded& l) {
  const TablePtr table = table_for(l, scheme_for(job, Scheme::small_FC));
  if (!l.split) throw ValidationError("hs-table needs a split");
  const HSOptions o = hs_options(job);
  const HSDecomposition hs = hochschild_serre(table, o);
  json j = hs.to_json(job.representatives);
  const int top = std::min<int>(max_ghost(job, l.algebra), static_cast<int>(l.algebra.dim()));
  j["ghost_dims"] = hs.ghost_dims(top);
  j["module"] = job.module;
  j["max_curv_degree"] = o.curvature_cap();
  j["max_ghost"] = top;
  if (job.crosscheck) j["crosscheck"] = crosscheck(table, hs, o).to_json();
  return j;
}

json cmd_descent(const JobSpec& job, Loaded& l) {
  const TablePtr table = table_for(l, scheme_for(job, Scheme::small_full));
  ClassificationOptions o;
  o.max_curvature = job.max_curv_degree;
  o.jobs = job.jobs;
  const DescentClassification c = classify(table, o);
  if (job.action == "classify") return c.to_json();
  json j = build_table(table, c).to_json();
  j["complete"] = c.complete;
  j["d1_consistent"] = c.d1_consistent;
  j["max_curv_degree"] = job.max_curv_degree;
  return j;
}

json chain_json(const DescentChain& ch) {
  json rungs = json::array();
  for (const auto& r : ch.rungs) rungs.push_back(r.to_string());
  json j = {{"bottom", ch.bottom.to_string()}, {"rungs", rungs}, {"top_d", ch.top_d.to_string()}};
  if (ch.obstruction) j["obstruction"] = ch.obstruction->to_string();
  return j;
}

json cmd_transgress(const JobSpec& job, Loaded& l) {
  const TablePtr table = table_for(l, scheme_for(job, Scheme::small_full));
  json chains = json::array();
  if (!job.theta.empty()) {
    chains.push_back(chain_json(transgress(table, Element::parse(table, job.theta))));
  } else {
    for (const auto& p : primitives_in(table, static_cast<int>(l.algebra.dim())).primitives)
      chains.push_back(chain_json(transgress(table, p)));
  }
  return {{"chains", chains}};
}

json cmd_operator(const JobSpec& job, Loaded& l) {
  const TablePtr table = table_for(l, scheme_for(job, Scheme::small_full));
  const Derivation d = build_operator(job.op.empty() ? "gamma" : job.op, table);
  json images = json::array();
  for (const auto& g : table->generators())
    images.push_back({{"generator", g.label}, {"image", d.image(g.id).to_string()}});
  return {{"operator", d.name()},
          {"scheme", scheme_name(table->scheme())},
          {"form_shift", d.form_shift()},
          {"ghost_shift", d.ghost_shift()},
          {"odd", d.odd()},
          {"images", images}};
}

json cmd_deform_check(const JobSpec& job) {
  const Rational lambda = parse_rational(job.lambda);
  const Rational mu = parse_rational(job.mu);
  const Deformation def = deform_iso21(lambda, mu);
  const auto inv = check_invariant_metric(def.algebra, def.metric);
  const BilinearForm omega0 = iso21_omega0();
  json j = {{"lambda", to_string(lambda)},
            {"mu", to_string(mu)},
            {"jacobi_valid", validate(def.algebra).ok()},
            {"killing_rank", killing_form(def.algebra).rank()},
            {"metric", matrix_json(def.metric.matrix)},
            {"metric_invariant", inv.invariant},
            {"metric_determinant", to_string(def.metric.matrix.determinant())},
            {"metric_nondegenerate", def.metric.nondegenerate()},
            {"omega0_invariant", check_invariant_metric(iso21(), omega0).invariant},
            {"omega0_killing_rank", killing_form(iso21()).rank()}};
  if (inv.witness) j["metric_witness"] = *inv.witness;
  return j;
}

json cache_request(const JobSpec& job, const Loaded& l) {
  return {{"version", BRST_VERSION},
          {"command", job.command},
          {"action", job.action},
          {"algebra", l.algebra.to_json()},
          {"split", l.split ? json(l.split->to_string()) : json(nullptr)},
          {"scheme", job.scheme},
          {"max_curv_degree", job.max_curv_degree},
          {"max_ghost", job.max_ghost ? json(*job.max_ghost) : json(nullptr)},
          {"module", job.module},
          {"operator", job.op},
          {"slice", job.slice},
          {"ghost", job.ghost ? json(*job.ghost) : json(nullptr)},
          {"theta", job.theta},
          {"representatives", job.representatives},
          {"crosscheck", job.crosscheck}};
}

std::string cache_dir(const JobSpec& job) {
  if (!job.cache_dir.empty()) return job.cache_dir;
  if (const char* env = std::getenv("BRST_CACHE_DIR")) return env;
  return {};
}

// ---- text rendering --------------------------------------------------------

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string grid(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows,
                 bool ragged_last = false) {
  std::vector<std::size_t> width(header.size(), 0);
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size() && c < width.size(); ++c) width[c] = std::max(width[c], r[c].size());
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < width.size(); ++c) {
      if (c) os << "  ";
      const std::string& cell = c < r.size() ? r[c] : std::string();
      if (ragged_last && c + 1 == width.size())
        os << cell;
      else
        os << std::setw(static_cast<int>(width[c])) << cell;
    }
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

// dims given as [{"ghost"/"ghost_C", "curvature", "dim"}]
std::string dim_grid(const json& entries, const std::string& row_key, const std::string& row_label) {
  int max_row = 0, max_col = 0;
  for (const auto& e : entries) {
    max_row = std::max(max_row, e[row_key].get<int>());
    max_col = std::max(max_col, e["curvature"].get<int>());
  }
  std::vector<std::vector<std::string>> rows(static_cast<std::size_t>(max_row) + 1,
                                             std::vector<std::string>(static_cast<std::size_t>(max_col) + 2, "0"));
  for (int r = 0; r <= max_row; ++r) rows[static_cast<std::size_t>(r)][0] = std::to_string(r);
  for (const auto& e : entries)
    rows[e[row_key].get<std::size_t>()][e["curvature"].get<std::size_t>() + 1] = std::to_string(e["dim"].get<std::size_t>());
  std::vector<std::string> header{row_label};
  for (int c = 0; c <= max_col; ++c) header.push_back("k=" + std::to_string(c));
  return grid(header, rows);
}

std::string render_text(const JobSpec& job, const json& r) {
  std::ostringstream os;
  const std::string& cmd = job.command;
  if (cmd == "validate") {
    os << r["algebra"].get<std::string>() << " (dim " << r["dim"] << "): " << (r["valid"].get<bool>() ? "valid" : "INVALID")
       << '\n';
    for (const auto& v : r["violations"])
      os << "  " << v["kind"].get<std::string>() << ' ' << v["indices"].dump() << " = " << v["value"].get<std::string>()
         << '\n';
    if (r.contains("split")) {
      const auto& s = r["split"];
      os << "split " << s["split"].get<std::string>() << ": " << (s["ok"].get<bool>() ? "ok" : s["failure"].get<std::string>())
         << (s["ideal_abelian"].get<bool>() ? " (abelian ideal)" : "") << '\n';
    }
  } else if (cmd == "killing" || cmd == "deform-check") {
    const json& m = r.contains("matrix") ? r["matrix"] : r["metric"];
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header;
    const std::size_t n = m.size();
    for (std::size_t c = 0; c < n; ++c)
      header.push_back(r.contains("basis") ? r["basis"][c].get<std::string>() : std::to_string(c));
    for (const auto& row : m) {
      std::vector<std::string> cells;
      for (const auto& x : row) cells.push_back(x.get<std::string>());
      rows.push_back(cells);
    }
    os << grid(header, rows);
    for (auto it = r.begin(); it != r.end(); ++it)
      if (it.key() != "matrix" && it.key() != "metric" && it.key() != "basis") os << it.key() << ": " << cell(*it) << '\n';
  } else if (cmd == "cohomology") {
    os << "operator " << r["operator"].get<std::string>() << " (" << r["scheme"].get<std::string>() << ")\n";
    auto block = [&](const json& h, const std::string& title) {
      os << title << "dim " << h["dim"] << '\n';
      for (const auto& rep : h["representatives"]) os << "  " << rep.get<std::string>() << '\n';
    };
    if (r.contains("cohomology")) {
      block(r["cohomology"], "");
    } else {
      for (std::size_t g = 0; g < r["by_ghost"].size(); ++g) block(r["by_ghost"][g], "ghost " + std::to_string(g) + ": ");
    }
  } else if (cmd == "hs-table") {
    os << "H(gammaS) by total ghost and curvature degree (module " << r["module"].get<std::string>() << ")\n";
    os << dim_grid(r["assembled"], "ghost", "gh");
    os << "relative H(gammaS1) by gh_C and curvature degree\n";
    os << dim_grid(r["relative"], "ghost_C", "gh_C");
    os << "primitives\n";
    for (const auto& p : r["primitives"]) os << "  [" << p["ghost"] << "] " << p["element"].get<std::string>() << '\n';
    if (r.contains("representatives"))
      for (const auto& p : r["representatives"])
        os << "  (" << p["ghost"] << "," << p["curvature"] << ") " << p["element"].get<std::string>() << '\n';
    if (r.contains("crosscheck"))
      os << "crosscheck: " << (r["crosscheck"]["ok"].get<bool>() ? "match" : "MISMATCH") << '\n';
  } else if (cmd == "descent" && job.action != "classify") {
    const int depth = r["max_depth"].get<int>();
    std::vector<std::string> header{"gh"};
    for (int d = 0; d <= depth; ++d) header.push_back("depth " + std::to_string(d));
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : r["rows"]) {
      std::vector<std::string> cells{std::to_string(row["ghost"].get<int>())};
      for (const auto& c : row["columns"]) cells.push_back(std::to_string(c.size()));
      rows.push_back(cells);
    }
    os << grid(header, rows);
    for (const auto& row : r["rows"])
      for (std::size_t d = 0; d < row["columns"].size(); ++d)
        for (const auto& s : row["columns"][d])
          os << "[" << row["ghost"].get<int>() << "," << d << "] " << s.get<std::string>() << '\n';
    if (r.value("partial", false)) os << "partial: towers over products of primitives not expanded\n";
    os << "complete: " << r["complete"] << ", d1 consistent: " << r["d1_consistent"] << '\n';
  } else if (cmd == "descent") {
    for (const char* list : {"E2", "F1", "d1F1"}) {
      os << list << " (" << r["classes"][list].size() << ")\n";
      for (const auto& c : r["classes"][list]) {
        os << "  (" << c["ghost"] << "," << c["curvature"] << ") ";
        if (c.contains("kind")) os << c["kind"].get<std::string>() << ": ";
        os << c["representative"].get<std::string>() << '\n';
      }
    }
    os << "complete: " << r["complete"] << ", d1 consistent: " << r["d1_consistent"] << '\n';
  } else if (cmd == "transgress") {
    for (const auto& ch : r["chains"]) {
      os << "bottom " << ch["bottom"].get<std::string>() << '\n';
      for (std::size_t i = 0; i < ch["rungs"].size(); ++i)
        os << "  rung " << i << ": " << ch["rungs"][i].get<std::string>() << '\n';
      os << "  d(top): " << ch["top_d"].get<std::string>() << '\n';
      if (ch.contains("obstruction")) os << "  obstruction: " << ch["obstruction"].get<std::string>() << '\n';
    }
  } else if (cmd == "operator") {
    os << r["operator"].get<std::string>() << " (" << r["scheme"].get<std::string>() << ", shift " << r["form_shift"]
       << "," << r["ghost_shift"] << ")\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& im : r["images"]) rows.push_back({im["generator"].get<std::string>(), "->", im["image"].get<std::string>()});
    os << grid({"generator", "", "image"}, rows, true);
  } else {
    os << r.dump(2) << '\n';
  }
  return os.str();
}

bool failed_validation(const JobSpec& job, const json& r, std::string& why) {
  if (job.command != "validate") return false;
  if (!r["valid"].get<bool>()) {
    why = "algebra violates antisymmetry or Jacobi";
    return true;
  }
  if (r.contains("split") && !r["split"]["ok"].get<bool>()) {
    why = "split rejected: " + r["split"]["failure"].get<std::string>();
    return true;
  }
  return false;
}

}  // namespace

json compute(const JobSpec& job, std::ostream& log) {
  if (job.max_curv_degree <= 0) throw ResourceError("--max-curv-degree must be positive");
  if (job.max_ghost && *job.max_ghost <= 0) throw ResourceError("--max-ghost must be positive");
  if (job.jobs <= 0) throw ResourceError("--jobs must be positive");
  if (job.command == "validate") return cmd_validate(job);
  if (job.command == "killing") return cmd_killing(job);
  if (job.command == "deform-check") return cmd_deform_check(job);

  Loaded l = load_algebra(job);
  std::optional<ResultCache> cache;
  std::string key;
  if (const std::string dir = cache_dir(job); !dir.empty()) {
    cache.emplace(dir);
    key = ResultCache::key(cache_request(job, l));
    if (auto hit = cache->load(key)) {
      if (job.verbose) log << "[brst] cache hit " << key << '\n';
      return *hit;
    }
  }
  const auto start = std::chrono::steady_clock::now();
  json result;
  if (job.command == "cohomology") result = cmd_cohomology(job, l);
  else if (job.command == "hs-table") result = cmd_hs_table(job, l);
  else if (job.command == "descent") result = cmd_descent(job, l);
  else if (job.command == "transgress") result = cmd_transgress(job, l);
  else if (job.command == "operator") result = cmd_operator(job, l);
  else throw ParseError("unknown command '" + job.command + "'");
  if (job.verbose)
    log << "[brst] " << job.command << " took "
        << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s\n";
  if (cache) {
    cache->store(key, result);
    if (job.verbose) log << "[brst] cached " << key << '\n';
  }
  return result;
}

std::string render(const JobSpec& job, const json& result) {
  if (job.format == Format::json) return result.dump() + "\n";
  return render_text(job, result);
}

int run(const JobSpec& job, std::ostream& out, std::ostream& err) {
  auto fail = [&](const char* kind, const std::string& message, int code) {
    err << json{{"error", kind}, {"message", message}}.dump() << '\n';
    return code;
  };
  try {
    const json result = compute(job, err);
    out << render(job, result);
    std::string why;
    if (failed_validation(job, result, why)) return fail("validation", why, 3);
    return 0;
  } catch (const Error& e) {
    return fail(e.kind(), e.what(), e.exit_code());
  } catch (const std::bad_alloc&) {
    return fail("resource", "out of memory", 4);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 1);
  }
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  JobSpec job;
  CLI::App app{"brst: Lie algebra and BRST cohomology in the small algebra"};
  app.set_version_flag("--version", BRST_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  app.add_option("--algebra", job.algebra, "Builtin algebra (" + [] {
    std::string s;
    for (const auto& n : builtin_names()) s += (s.empty() ? "" : ", ") + n;
    return s;
  }() + ")");
  app.add_option("--spec-file", job.spec_file, "JSON algebra spec");
  app.add_option("--split", job.split, "K=..;J=.. index sets");
  app.add_option("--scheme", job.scheme, "ce_ghost, small_FC or small_full");
  app.add_option("--max-curv-degree", job.max_curv_degree, "Curvature degree cap")->capture_default_str();
  app.add_option("--max-ghost", job.max_ghost, "Total ghost cap (default 2 dim)");
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_option("--cache-dir", job.cache_dir, "Result cache (default $BRST_CACHE_DIR)");
  app.add_option("--jobs", job.jobs, "Worker threads")->capture_default_str();
  app.add_flag("--verbose", job.verbose, "Progress on stderr");

  app.add_subcommand("validate", "Check antisymmetry, Jacobi and the split");
  app.add_subcommand("killing", "Killing form and its rank");
  auto* coh = app.add_subcommand("cohomology", "Cohomology of an operator on monomial slices");
  coh->add_option("--operator", job.op, "Operator name (default gamma)");
  coh->add_option("--ghost", job.ghost, "Single total ghost number");
  coh->add_option("--slice", job.slice, "grading=v or grading=lo..hi, repeatable");
  auto* hs = app.add_subcommand("hs-table", "Hochschild-Serre dimensions");
  hs->add_option("--module", job.module, "trivial or symmetric")
      ->check(CLI::IsMember({"trivial", "symmetric"}))
      ->capture_default_str();
  hs->add_flag("--representatives", job.representatives, "Include representative strings");
  hs->add_flag("--crosscheck", job.crosscheck, "Compare with the direct computation");
  auto* desc = app.add_subcommand("descent", "Descent classification and table");
  job.action = "table";
  desc->add_option("action", job.action, "table or classify")->check(CLI::IsMember({"table", "classify"}));
  auto* tr = app.add_subcommand("transgress", "Descent chains of primitives");
  tr->add_option("--theta", job.theta, "Element (default: every primitive)");
  auto* def = app.add_subcommand("deform-check", "Deformed iso(2,1) brackets and metric");
  def->add_option("--lambda", job.lambda, "Deformation parameter")->capture_default_str();
  def->add_option("--mu", job.mu, "Metric parameter")->capture_default_str();
  auto* op = app.add_subcommand("operator", "Generator images of an operator");
  op->add_option("--operator", job.op, "Operator name (default gamma)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << json{{"error", "parse"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  }
  job.command = app.get_subcommands().front()->get_name();
  job.format = format == "text" ? Format::text : Format::json;
  return run(job, out, err);
}

}  // namespace brst::cli
