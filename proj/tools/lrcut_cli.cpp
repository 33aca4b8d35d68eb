#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "lrcut/classifier.hpp"
#include "lrcut/error.hpp"
#include "lrcut/gallery.hpp"
#include "lrcut/scheme_io.hpp"
#include "lrcut/window.hpp"

using namespace lrcut;
using Json = nlohmann::ordered_json;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string format;  // empty: the command's natural format
};

std::string read_input(const std::string& path) {
  std::ostringstream os;
  if (path == "-") {
    os << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) fail("IoError", "cannot read " + path);
    os << in.rdbuf();
  }
  return os.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("IoError", "cannot write " + path);
  out << text;
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

Json vec_json(const IntVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(integer_json(x));
  return a;
}

Json mat_json(const IntMatrix& m) {
  Json a = Json::array();
  for (const auto& row : m) a.push_back(vec_json(row));
  return a;
}

Json field_json(const FieldElement& x) {
  return Json{{"exact", x.to_string()}, {"decimal", num(x.to_double())}};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string csv() const {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + csv_field(cells[i]);
      out += "\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
  }

  Json json() const {
    Json a = Json::array();
    for (const auto& r : rows) {
      Json o = Json::object();
      for (std::size_t i = 0; i < header.size(); ++i) o[header[i]] = r[i];
      a.push_back(o);
    }
    return a;
  }
};

Json report_header(const std::string& command, const Scheme& s, const Globals& g) {
  return Json{{"tool", "lrcut"},
              {"version", kToolVersion},
              {"command", command},
              {"scheme_hash", scheme_hash(s)},
              {"seed", g.seed},
              {"threads", g.threads}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Tables default to CSV; --format json wraps them in a report.
std::string emit_table(const std::string& command, const Scheme& s, const Globals& g, const Table& t, Json extra = {}) {
  if (g.format.empty() || g.format == "csv") return t.csv();
  Json j = report_header(command, s, g);
  if (extra.is_object())
    for (auto& [k, v] : extra.items()) j[k] = v;
  j["rows"] = t.json();
  return dump(j);
}

// Reports are JSON only.
std::string emit_report(const Globals& g, const Json& j) {
  if (g.format == "csv") fail("BadParams", "this command only writes JSON");
  return dump(j);
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      fail("BadParams", "not an integer: " + item);
    }
  }
  if (out.empty()) fail("BadParams", "empty radius list");
  return out;
}

long default_sample_radius(const Scheme& s) { return s.d == 1 ? 10000 : s.d == 2 ? 200 : 40; }


Json lr1_json(const Lr1Result& r) {
  Json ranks = Json::array();
  for (auto v : r.ranks) ranks.push_back(v);
  return Json{{"holds", r.holds}, {"ranks", ranks}, {"sum", r.sum}, {"target", r.target}};
}

Json verdict_json(const BadVerdict& v) {
  Json j{{"status", to_string(v.status)}, {"certificate", v.certificate}, {"evidence", v.evidence}, {"depth", v.depth}};
  j["infimum"] = v.infimum ? field_json(*v.infimum) : Json();
  j["witness"] = vec_json(v.witness);
  return j;
}

std::string cmd_validate(const Scheme& s, const Globals& g, int& exit_code) {
  Json j = report_header("validate", s, g);
  j["k"] = s.k;
  j["d"] = s.d;
  j["window"] = to_string(s.window);
  Sublattice rel = form_relations(s);
  Sublattice per = period_lattice(s);
  auto reg = check_regular(s);
  j["totally_irrational"] = rel.rank() == 0;
  j["relations"] = mat_json(rel.basis());
  j["aperiodic"] = per.rank() == 0;
  j["periods"] = mat_json(per.basis());
  Json rj{{"regular", reg.regular}};
  if (!reg.regular) {
    rj["coordinate"] = reg.coordinate ? Json(*reg.coordinate) : Json();
    rj["witness_n"] = vec_json(reg.witness_n);
    rj["witness_offset"] = vec_json(reg.witness_offset);
  }
  j["shift"] = rj;
  j["valid"] = reg.regular;
  exit_code = reg.regular ? 0 : 1;
  return emit_report(g, j);
}

std::string cmd_gen(const Scheme& s, const Globals& g, long radius, bool embedded) {
  if (radius < 0) fail("BadParams", "radius must be nonnegative");
  Table t;
  for (std::size_t j = 1; j <= s.d; ++j) t.header.push_back("n_" + std::to_string(j));
  for (std::size_t i = 1; i <= s.codim(); ++i) t.header.push_back("offset_" + std::to_string(i));
  if (embedded)
    for (std::size_t j = 1; j <= s.d; ++j) t.header.push_back("x_" + std::to_string(j));
  for (const auto& p : generate(s, radius, embedded)) {
    std::vector<std::string> row;
    for (const auto& v : p.n) row.push_back(v.get_str());
    for (const auto& v : p.offset) row.push_back(v.get_str());
    for (double x : p.embedded) row.push_back(num(x));
    t.rows.push_back(std::move(row));
  }
  return emit_table("gen", s, g, t, Json{{"radius", radius}});
}

std::string cmd_complexity(const Scheme& s, const Globals& g, int rmax, long sample_radius) {
  if (rmax < 0) fail("BadParams", "rmax must be nonnegative");
  Table t{{"r", "c_r"}, {}};
  Json extra{{"rmax", rmax}};
  if (s.window == WindowKind::Cubical) {
    extra["mode"] = "exact";
    for (int r = 0; r <= rmax; ++r) t.rows.push_back({std::to_string(r), region_summary(s, r).count.get_str()});
  } else {
    // Canonical windows: classes seen among sampled centres (a lower bound).
    if (sample_radius <= 0) sample_radius = default_sample_radius(s);
    extra["mode"] = "sampled";
    extra["sample_radius"] = sample_radius;
    for (int r = 0; r <= rmax; ++r)
      t.rows.push_back({std::to_string(r), std::to_string(sampled_frequencies(s, r, sample_radius, g.threads).classes.size())});
  }
  return emit_table("complexity", s, g, t, extra);
}

std::string cmd_lr(const Scheme& s, const Globals& g, long depth, std::size_t targets) {
  auto v = classify(s, depth, g.threads);
  Json j = report_header("lr", s, g);
  j["overall"] = to_string(v.overall);
  j["reason"] = v.reason;
  j["lr1"] = lr1_json(v.lr1);
  j["relations"] = mat_json(v.relations);
  Json forms = Json::array();
  for (std::size_t i = 0; i < v.lr2.size(); ++i) {
    const auto& f = v.lr2[i];
    forms.push_back(Json{{"form", i + 1},
                         {"kernel", mat_json(f.kernel.basis())},
                         {"complement", mat_json(f.complement.basis())},
                         {"verdict", verdict_json(f.verdict)}});
  }
  j["lr2"] = forms;
  j["requested_depth"] = depth;
  Json notes = Json::array();
  for (const auto& n : v.notes) notes.push_back(n);
  j["notes"] = notes;
  if (targets > 0) {
    if (s.codim() != 1) fail("BadParams", "--targets needs k - d = 1");
    long n = depth > 0 ? depth : default_depth(s.d);
    auto rep = transference_probe(s.forms[0], n, random_targets(g.seed, targets), 1, g.threads);
    Json tj = Json::array();
    for (const auto& t : rep.targets)
      tj.push_back(Json{{"gamma", t.gamma.get_str()}, {"best_n", vec_json(t.best_n)}, {"best", field_json(t.best)},
                        {"scaled", num(t.scaled)}});
    j["transference"] = Json{{"depth", n}, {"targets", tj}, {"max_scaled", num(rep.max_scaled)}};
  }
  return emit_report(g, j);
}

std::string cmd_repetitivity(const Scheme& s, const Globals& g, int rmax) {
  auto scan = repetitivity_scan(s, rmax, g.threads);
  Table t{{"r", "c_r"}, {}};
  for (std::size_t i = 1; i <= s.codim(); ++i) t.header.push_back("min_gap_" + std::to_string(i));
  for (const char* h : {"R_r", "ratio", "capped"}) t.header.push_back(h);
  for (const auto& rec : scan.records) {
    std::vector<std::string> row{std::to_string(rec.r), rec.c_r.get_str()};
    for (const auto& m : rec.min_gaps) row.push_back(num(m.to_double()));
    while (row.size() < 2 + s.codim()) row.push_back("");
    row.push_back(std::to_string(rec.R));
    row.push_back(num(rec.ratio));
    row.push_back(rec.capped ? "true" : "false");
    t.rows.push_back(std::move(row));
  }
  return emit_table("repetitivity", s, g, t, Json{{"mode", scan.mode}, {"trend_up", scan.trend_up}});
}

std::string cmd_pq(const Scheme& s, const Globals& g, const std::string& rs, long sample_radius) {
  auto est = pq_estimate(s, parse_int_list(rs), sample_radius, g.threads);
  Table t{{"r", "value", "exact"}, {}};
  for (const auto& rec : est.records)
    t.rows.push_back({std::to_string(rec.r), num(rec.value), rec.exact ? rec.exact->to_string() : ""});
  return emit_table("pq", s, g, t,
                    Json{{"mode", est.mode}, {"sample_radius", est.sample_radius}, {"minimum", num(est.minimum)}});
}

std::string cmd_frequencies(const Scheme& s, const Globals& g, int r, long sample_radius) {
  if (sample_radius <= 0) sample_radius = default_sample_radius(s);
  auto rep = sampled_frequencies(s, r, sample_radius, g.threads);
  Table t{{"class_id", "count", "frequency"}, {}};
  for (std::size_t i = 0; i < rep.classes.size(); ++i)
    t.rows.push_back({std::to_string(i), std::to_string(rep.classes[i].count), num(rep.classes[i].frequency)});
  return emit_table("frequencies", s, g, t, Json{{"r", r}, {"sample_radius", sample_radius}, {"total", rep.total}});
}

std::string cmd_derivability(const Scheme& s, const Globals& g) {
  auto d = local_derivability(s);
  Json j = report_header("derivability", s, g);
  j["cubical_from_canonical"] = d.cubical_from_canonical;
  j["canonical_from_cubical"] = d.canonical_from_cubical;
  Json w = Json::array();
  for (auto i : d.witnesses) w.push_back(i);
  j["witnesses"] = w;
  return emit_report(g, j);
}

std::string cmd_permutations(const Scheme& s, const Globals& g) {
  Json j = report_header("permutations", s, g);
  Json a = Json::array();
  for (const auto& p : permutation_scan(s)) {
    Json ref = Json::array();
    for (auto i : p.reference) ref.push_back(i);
    Json o{{"reference", ref}, {"valid", p.valid}};
    if (p.valid) {
      Json forms = Json::array();
      for (const auto& row : p.forms) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(x.to_string());
        forms.push_back(r);
      }
      o["forms"] = forms;
      o["lr1"] = lr1_json(p.lr1);
    }
    o["note"] = p.note;
    a.push_back(o);
  }
  j["parametrizations"] = a;
  return emit_report(g, j);
}

GalleryParams parse_params(const std::vector<std::string>& items) {
  GalleryParams p;
  for (const auto& it : items) {
    auto eq = it.find('=');
    if (eq == std::string::npos || eq == 0) fail("BadParams", "expected key=value, got " + it);
    p[it.substr(0, eq)] = it.substr(eq + 1);
  }
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lrcut: cut-and-project sets, linear repetitivity and patch statistics"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "seed for sampled targets")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads")->capture_default_str()->check(CLI::Range(1u, 256u));
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv"}));

  std::string scheme_path, out_path, name, rs;
  long radius = 0, depth = 0, sample_radius = 0;
  int rmax = 0, r = 1;
  std::size_t targets = 0;
  bool embedded = false;
  std::vector<std::string> params;

  auto with_scheme = [&](CLI::App* sub) {
    sub->add_option("scheme", scheme_path, "scheme file, - for stdin")->required();
    sub->add_option("-o,--output", out_path, "output file, - for stdout");
    return sub;
  };
  auto* validate = with_scheme(app.add_subcommand("validate", "check a scheme file"));
  auto* gen = with_scheme(app.add_subcommand("gen", "list accepted points"));
  gen->add_option("--radius", radius, "sup-norm radius of n")->required();
  gen->add_flag("--embedded", embedded, "add embedded coordinates");
  auto* complexity = with_scheme(app.add_subcommand("complexity", "patch complexity table"));
  complexity->add_option("--rmax", rmax)->required();
  complexity->add_option("--sample-radius", sample_radius, "canonical windows only");
  auto* lr = with_scheme(app.add_subcommand("lr", "linear repetitivity verdict"));
  lr->add_option("--depth", depth, "scan depth, 0 for the default");
  lr->add_option("--targets", targets, "seeded inhomogeneous targets (k - d = 1)");
  auto* rep = with_scheme(app.add_subcommand("repetitivity", "repetitivity radii"));
  rep->add_option("--rmax", rmax)->required();
  auto* pq = with_scheme(app.add_subcommand("pq", "minimal frequency times r^d"));
  pq->add_option("--r", rs, "comma separated radii")->required();
  pq->add_option("--sample-radius", sample_radius);
  auto* freq = with_scheme(app.add_subcommand("frequencies", "patch class frequencies"));
  freq->add_option("--r", r)->required();
  freq->add_option("--sample-radius", sample_radius);
  auto* deriv = with_scheme(app.add_subcommand("derivability", "local derivability of the two windows"));
  auto* perms = with_scheme(app.add_subcommand("permutations", "reparametrize over coordinate subsets"));
  auto* gallery = app.add_subcommand("gallery", "write a gallery scheme");
  gallery->add_option("name", name, "entry name; omit to list")->default_val("");
  gallery->add_option("--params", params, "key=value pairs");
  gallery->add_option("-o,--output", out_path, "output file, - for stdout");

  CLI11_PARSE(app, argc, argv);

  int exit_code = 0;
  try {
    std::string text;
    if (gallery->parsed()) {
      if (name.empty()) {
        for (const auto& n : gallery_names()) text += n + "\n";
      } else {
        text = serialize_scheme(build(name, parse_params(params)).scheme);
      }
    } else {
      Scheme s = parse_scheme(read_input(scheme_path));
      if (validate->parsed()) text = cmd_validate(s, g, exit_code);
      if (gen->parsed()) text = cmd_gen(s, g, radius, embedded);
      if (complexity->parsed()) text = cmd_complexity(s, g, rmax, sample_radius);
      if (lr->parsed()) text = cmd_lr(s, g, depth, targets);
      if (rep->parsed()) text = cmd_repetitivity(s, g, rmax);
      if (pq->parsed()) text = cmd_pq(s, g, rs, sample_radius);
      if (freq->parsed()) text = cmd_frequencies(s, g, r, sample_radius);
      if (deriv->parsed()) text = cmd_derivability(s, g);
      if (perms->parsed()) text = cmd_permutations(s, g);
    }
    write_output(out_path, text);
  } catch (const Error& e) {
    std::cerr << Json{{"error", e.code()}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }
  return exit_code;
}
