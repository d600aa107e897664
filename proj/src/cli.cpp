#include "spreadlab/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "spreadlab/closure.hpp"
#include "spreadlab/errors.hpp"
#include "spreadlab/fieldreduction.hpp"
#include "spreadlab/parallel.hpp"
#include "spreadlab/scenarios.hpp"
#include "spreadlab/serialize.hpp"
#include "spreadlab/sperner.hpp"

namespace spreadlab::cli {
namespace {

using io::Json;

struct Opts {
  std::uint32_t q = 0;
  unsigned n = 0;
  int r = 0;
  std::uint32_t q0 = 0;
  unsigned threads = 1;
  std::string format = "json";
  std::uint64_t seed = 0;
  bool oracle = false;
  std::uint64_t budget = 0;
  std::string out;
  std::string kind;
  std::string closure = "multiplication";
  std::string in;
  int trials = 0;
  int samples = 0;
  std::string set;
  std::string set0;
  std::string points;
  std::string pivots;
  std::string name;
};

struct Result {
  Json report;
  int code = 0;
  std::string csv;  // preformatted CSV body, if any
  std::string file = "report.json";
};

std::uint32_t q_or(const Opts& o, std::uint32_t d) { return o.q ? o.q : d; }
unsigned n_or(const Opts& o, unsigned d) { return o.n ? o.n : d; }
int r_or(const Opts& o, int d) { return o.r ? o.r : d; }

std::string csv_cell(const Json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string flat_csv(const Json& j) {
  std::ostringstream os;
  os << "key,value\n";
  for (auto it = j.begin(); it != j.end(); ++it) os << it.key() << ',' << csv_cell(it.value()) << '\n';
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Loaded {
  gf::FieldTower tower;
  spreads::Spread spread;
};

Loaded load_spread(const Opts& o) {
  if (!o.in.empty()) {
    Json j;
    try {
      j = Json::parse(read_file(o.in));
    } catch (const nlohmann::json::exception& e) {
      throw DomainError(std::string("malformed JSON: ") + e.what());
    }
    if (j.contains("spread")) j = j["spread"];
    if (!j.contains("q") || !j.contains("n")) throw DomainError("spread JSON needs q and n");
    auto t = gf::FieldTower::for_orders(j["q"].get<std::uint32_t>(), j["n"].get<unsigned>());
    auto s = io::spread_from(t.base(), j);
    return {std::move(t), std::move(s)};
  }
  const std::string kind = o.kind.empty() ? "desarguesian" : o.kind;
  auto t = gf::FieldTower::for_orders(q_or(o, 3), n_or(o, 2));
  const auto& f = t.base();
  const int r = r_or(o, 3);
  if (kind == "desarguesian") {
    auto s = fieldred::desarguesian_spread(t, r);
    return {std::move(t), std::move(s)};
  }
  if (kind == "S") {
    auto s = spreads::construct_S_r(f, scenarios::named_set(t, o.set.empty() ? "dickson" : o.set), r);
    return {std::move(t), std::move(s)};
  }
  if (kind == "T") {
    auto s = spreads::construct_T_3(f, scenarios::named_set(t, o.set.empty() ? "field" : o.set),
                                    scenarios::named_set(t, o.set0.empty() ? "dickson" : o.set0));
    return {std::move(t), std::move(s)};
  }
  if (kind == "U") {
    if (r < 2) throw DomainError("U_r needs r >= 2");
    const auto mi = scenarios::named_set(t, o.set0.empty() ? "dickson" : o.set0);
    auto s = spreads::construct_U_r(f, scenarios::named_set(t, o.set.empty() ? "field" : o.set),
                                    std::vector<sets::SpreadSet>(r - 1, mi));
    return {std::move(t), std::move(s)};
  }
  throw DomainError("unknown spread kind: " + kind + " (expected desarguesian, S, T or U)");
}

Json header(const spreads::Spread& s) {
  Json j = io::spread(s);
  j.erase("elements");
  return j;
}

sets::SpreadSet set_from(const Opts& o, const gf::FieldTower& t, const char* fallback) {
  return scenarios::named_set(t, o.set.empty() ? fallback : o.set);
}

// ---------------------------------------------------------------------------

Result field_info(const Opts& o) {
  Result r;
  r.report = io::report("field info");
  const auto q = q_or(o, 9);
  r.report["field"] = io::field_info(gf::Field::of_order(q));
  if (o.n > 1) r.report["tower"] = io::tower_info(gf::FieldTower::for_orders(q, o.n));
  return r;
}

Result spread_build(const Opts& o) {
  const auto l = load_spread(o);
  Result r;
  r.report = io::report("spread build");
  const Json summary = scenarios::spread_summary(l.tower.base(), l.spread, o.threads);
  for (const auto& [k, v] : summary.items()) r.report[k] = v;
  r.report["spread"] = io::spread(l.spread);
  r.code = r.report["valid"].get<bool>() ? 0 : 1;
  r.file = "spread.json";
  return r;
}

Result spread_verify(const Opts& o) {
  const auto l = load_spread(o);
  const auto check = spreads::validate_spread(l.tower.base(), l.spread);
  Result r;
  r.report = io::report("spread verify");
  r.report["spread"] = header(l.spread);
  r.report["valid"] = check.ok;
  if (!check.ok) {
    r.report["reason"] = check.reason;
    if (check.meeting_pair) r.report["meeting_pair"] = {check.meeting_pair->first, check.meeting_pair->second};
    if (check.uncovered_point) r.report["uncovered_point"] = *check.uncovered_point;
  }
  r.code = check.ok ? 0 : 1;
  return r;
}

Result spread_normals(const Opts& o) {
  const auto l = load_spread(o);
  const auto normals = spreads::normal_elements(l.tower.base(), l.spread, o.threads);
  Result r;
  r.report = io::report("spread normals");
  r.report["spread"] = header(l.spread);
  r.report["normal_count"] = normals.size();
  r.report["normal_indices"] = normals;
  std::ostringstream os;
  os << "element,normal\n";
  for (std::size_t i = 0; i < l.spread.elements.size(); ++i)
    os << i << ',' << std::binary_search(normals.begin(), normals.end(), static_cast<int>(i)) << '\n';
  r.csv = os.str();
  return r;
}

Result spread_maxgp(const Opts& o) {
  const auto l = load_spread(o);
  const auto& f = l.tower.base();
  const auto normals = spreads::normal_elements(f, l.spread, o.threads);
  const auto gp = spreads::max_normal_general_position(f, l.spread, normals);
  Result r;
  r.report = io::report("spread maxgp");
  r.report["spread"] = header(l.spread);
  r.report["normal_count"] = normals.size();
  r.report["max_general_position"] = gp.k;
  r.report["witness"] = gp.witness;
  return r;
}

Result spreadset_search(const Opts& o) {
  sets::Closure c;
  if (o.closure == "multiplication") c = sets::Closure::multiplication;
  else if (o.closure == "addition") c = sets::Closure::addition;
  else throw DomainError("--closure must be multiplication or addition");
  const auto f = gf::Field::of_order(q_or(o, 3));
  const unsigned n = n_or(o, 2);
  sets::SearchOptions opt;
  if (o.budget) opt.budget = o.budget;
  opt.threads = std::max(1u, o.threads);
  const auto found = sets::search_closed_spread_sets(f, static_cast<int>(n), c, opt);
  Result r;
  r.report = io::report("spreadset search");
  r.report["closure"] = sets::closure_name(c);
  r.report["q"] = f.order();
  r.report["n"] = n;
  r.report["count"] = found.size();
  Json arr = Json::array();
  std::ostringstream os;
  os << "index,size,nearfield,semifield\n";
  for (std::size_t i = 0; i < found.size(); ++i) {
    Json e = io::spread_set(found[i]);
    const bool nf = sets::is_nearfield_set(f, found[i]), sf = sets::is_semifield_set(f, found[i]);
    e["nearfield"] = nf;
    e["semifield"] = sf;
    os << i << ',' << found[i].matrices.size() << ',' << nf << ',' << sf << '\n';
    arr.push_back(std::move(e));
  }
  r.report["sets"] = std::move(arr);
  r.csv = os.str();
  return r;
}

Json kernel_json(const sets::Quasifield& qf) {
  const auto k = sets::kernel_of(qf);
  return {{"size", k.size()}, {"elements", k}};
}

Result spreadset_dickson(const Opts& o) {
  const auto t = gf::FieldTower::for_orders(q_or(o, 3), n_or(o, 2));
  const auto& f = t.base();
  const auto d = sets::dickson_nearfield(t);
  const auto ax = sets::check_quasifield_axioms(f, d.quasifield);
  Result r;
  r.report = io::report("spreadset dickson");
  r.report["q"] = t.q();
  r.report["n"] = t.n();
  r.report["from_search"] = d.from_search;
  r.report["axioms"] = io::axioms(ax);
  r.report["quasifield_axioms"] = ax.quasifield();
  r.report["associative"] = sets::is_associative(d.quasifield);
  r.report["kernel"] = kernel_json(d.quasifield);
  r.report["multiplication_closed"] = sets::is_nearfield_set(f, d.set);
  r.report["addition_closed"] = sets::is_semifield_set(f, d.set);
  r.report["set"] = io::spread_set(d.set);
  r.report["quasifield"] = io::quasifield(d.quasifield);
  r.code = ax.quasifield() && sets::is_associative(d.quasifield) ? 0 : 1;
  return r;
}

Result spreadset_nuclei(const Opts& o) {
  const auto t = gf::FieldTower::for_orders(q_or(o, 3), n_or(o, 2));
  const auto& f = t.base();
  const auto m = set_from(o, t, "dickson");
  auto list = [&](const std::vector<linalg::Matrix>& xs) {
    Json a = Json::array();
    for (const auto& x : xs) a.push_back(io::matrix(x, m.q));
    return Json{{"size", xs.size()}, {"matrices", a}};
  };
  Result r;
  r.report = io::report("spreadset nuclei");
  r.report["set_name"] = o.set.empty() ? "dickson" : o.set;
  r.report["right_nucleus"] = list(sets::right_nucleus(f, m));
  r.report["middle_nucleus"] = list(sets::middle_nucleus(f, m));
  r.report["center"] = list(sets::center(f, m));
  return r;
}

Result spreadset_axioms(const Opts& o) {
  const auto t = gf::FieldTower::for_orders(q_or(o, 3), n_or(o, 2));
  const auto& f = t.base();
  const auto m = set_from(o, t, "dickson");
  const auto qf = sets::quasifield_from_spread_set(f, m);
  const auto ax = sets::check_quasifield_axioms(f, qf);
  Result r;
  r.report = io::report("spreadset axioms");
  r.report["set_name"] = o.set.empty() ? "dickson" : o.set;
  r.report["axioms"] = io::axioms(ax);
  r.report["quasifield_axioms"] = ax.quasifield();
  r.report["nearfield_set"] = sets::is_nearfield_set(f, m);
  r.report["semifield_set"] = sets::is_semifield_set(f, m);
  r.report["kernel"] = kernel_json(qf);
  std::ostringstream os;
  os << "axiom,pass\n";
  for (const auto& a : ax.axioms) os << a.name << ',' << a.pass << '\n';
  r.csv = os.str();
  r.code = ax.quasifield() ? 0 : 1;
  return r;
}

Result regulus(const Opts& o) {
  const auto t = gf::FieldTower::for_orders(q_or(o, 3), n_or(o, 2));
  const auto& f = t.base();
  const auto m = set_from(o, t, "dickson");
  const auto s = spreads::construct_S_r(f, m, 2);
  const int n = static_cast<int>(t.n());
  const linalg::Matrix blocks[2] = {linalg::Matrix(n, n), linalg::Matrix::identity(n)};
  const int e = s.index_of(geom::block_subspace(f, blocks));
  const std::uint32_t q0 = o.q0 ? o.q0 : t.q();
  const auto rc = spreads::regulus_closure_at(f, s, e, q0);
  Result r;
  r.report = io::report("regulus");
  r.report["set_name"] = o.set.empty() ? "dickson" : o.set;
  r.report["spread"] = header(s);
  r.report["e"] = e;
  r.report["q0"] = q0;
  r.report["holds"] = rc.holds;
  if (rc.witness) r.report["witness_pair"] = {rc.witness->first, rc.witness->second};
  return r;
}

closure::PointSet parse_points(const closure::Plane& plane, const std::string& text) {
  closure::PointSet out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    std::stringstream ps(item);
    std::string c;
    closure::Point p{};
    int i = 0;
    while (std::getline(ps, c, ',')) {
      if (i == 3) throw DomainError("points have three coordinates");
      const auto v = std::stoul(c);
      if (v >= plane.field().order()) throw DomainError("coordinate outside the field");
      p[i++] = static_cast<std::uint8_t>(v);
    }
    if (i != 3) throw DomainError("points have three coordinates");
    out.insert(plane.normalize(p));
  }
  return out;
}

Result closure_run(const Opts& o) {
  const auto f = gf::Field::of_order(q_or(o, 9));
  const closure::Plane plane(f);
  const auto s = parse_points(plane, o.points.empty() ? "1,0,0;0,1,0;0,0,1;1,1,1" : o.points);
  Result r;
  r.report = io::report("closure run");
  r.report["q"] = f.order();
  r.report["input"] = io::points(s);
  const auto c = o.pivots.empty() ? closure::closure(plane, s)
                                  : closure::restricted_closure(plane, s, parse_points(plane, o.pivots));
  r.report["restricted"] = !o.pivots.empty();
  r.report["size"] = c.size();
  r.report["points"] = io::points(c);
  return r;
}

Result scenario(const std::string& name, const Opts& o) {
  scenarios::Params p;
  p.q = o.q;
  p.n = o.n;
  p.r = o.r;
  p.q0 = o.q0;
  p.seed = o.seed;
  p.threads = std::max(1u, o.threads);
  p.oracle = o.oracle;
  p.budget = o.budget;
  p.trials = o.trials;
  p.samples = o.samples;
  auto out = scenarios::run(name, p);
  Result r;
  r.report = std::move(out.report);
  r.code = out.pass ? 0 : 1;
  r.file = name + ".json";
  return r;
}

Result scenario_list(const Opts&) {
  Result r;
  r.report = io::report("scenario list");
  Json arr = Json::array();
  std::ostringstream os;
  os << "name,summary\n";
  for (const auto& e : scenarios::catalog()) {
    arr.push_back({{"name", e.name}, {"summary", e.summary}});
    os << e.name << ',' << csv_cell(e.summary) << '\n';
  }
  r.report["scenarios"] = std::move(arr);
  r.csv = os.str();
  return r;
}

Result sperner_build(const Opts& o) {
  const auto l = load_spread(o);
  const auto t = sperner::SpernerSpace::build(l.tower.base(), l.spread);
  const auto rep = sperner::validate_design(t.design());
  Result r;
  r.report = io::report("sperner build");
  r.report["spread"] = header(l.spread);
  r.report["points"] = t.num_points();
  r.report["lines"] = t.num_lines();
  r.report["line_size"] = t.line_size();
  r.report["classes"] = t.design().num_classes;
  r.report["pair_coverage"] = rep.pair_coverage;
  r.report["parallelism"] = rep.parallelism;
  r.report["valid"] = rep.ok;
  r.code = rep.ok ? 0 : 1;
  return r;
}

Result sperner_normals(const Opts& o) {
  const auto l = load_spread(o);
  const auto& f = l.tower.base();
  const auto t = sperner::SpernerSpace::build(f, l.spread);
  const auto normals = spreads::normal_elements(f, l.spread, o.threads);
  const auto m = l.spread.elements.size();
  std::vector<sperner::NormalLineResult> res(m);
  parallel_for(m, std::max(1u, o.threads),
               [&](std::size_t e) { res[e] = t.is_normal_line(t.origin_line(static_cast<int>(e)), o.oracle); });
  Result r;
  r.report = io::report("sperner normals");
  r.report["spread"] = header(l.spread);
  r.report["oracle"] = o.oracle;
  Json arr = Json::array();
  std::ostringstream os;
  os << "element,line,normal_line,normal_element\n";
  bool agree = true;
  for (std::size_t e = 0; e < m; ++e) {
    const bool ne = std::binary_search(normals.begin(), normals.end(), static_cast<int>(e));
    agree = agree && ne == res[e].normal;
    Json x{{"element", e}, {"line", t.origin_line(static_cast<int>(e))}, {"normal_line", res[e].normal},
           {"normal_element", ne}, {"planes_built", res[e].planes_built}};
    if (res[e].witness_point) x["witness_point"] = *res[e].witness_point;
    arr.push_back(std::move(x));
    os << e << ',' << t.origin_line(static_cast<int>(e)) << ',' << res[e].normal << ',' << ne << '\n';
  }
  r.report["lines"] = std::move(arr);
  r.report["agree"] = agree;
  r.csv = os.str();
  r.code = agree ? 0 : 1;
  return r;
}

Result sperner_export(const Opts& o) {
  const auto l = load_spread(o);
  const auto t = sperner::SpernerSpace::build(l.tower.base(), l.spread);
  std::ostringstream os;
  t.export_csv(os);
  Result r;
  r.report = io::report("sperner export");
  r.report["spread"] = header(l.spread);
  r.report["points"] = t.num_points();
  r.report["lines"] = t.num_lines();
  r.report["rows"] = t.num_lines() * t.line_size();
  r.csv = os.str();
  r.file = "design.csv";
  return r;
}

void emit(const Result& res, const Opts& o, std::ostream& out) {
  const bool csv = o.format == "csv";
  const bool raw_csv = res.file == "design.csv";
  std::string body;
  if (raw_csv) body = res.csv;
  else if (csv) body = res.csv.empty() ? flat_csv(res.report) : res.csv;
  else body = res.report.dump(2) + "\n";
  if (!o.out.empty()) {
    std::filesystem::create_directories(o.out);
    std::string file = res.file;
    if (csv && !raw_csv) file = file.substr(0, file.rfind('.')) + ".csv";
    const auto path = std::filesystem::path(o.out) / file;
    std::ofstream f(path);
    if (!f) throw DomainError("cannot write " + path.string());
    f << body;
    if (raw_csv) body = res.report.dump(2) + "\n";
  }
  out << body;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Opts o;
  CLI::App app{"Finite spreads, quasifields and normal elements", "spreadlab"};
  app.require_subcommand(1);
  std::function<Result()> action;

  auto common = [&](CLI::App* a) {
    a->add_option("--q", o.q, "field order");
    a->add_option("--n", o.n, "extension degree");
    a->add_option("--r", o.r, "number of blocks");
    a->add_option("--q0", o.q0, "subfield order for regulus closure");
    a->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    a->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    a->add_option("--seed", o.seed, "seed for randomized checks");
    a->add_flag("--oracle", o.oracle, "unoptimized normal-line scan");
    a->add_option("--budget", o.budget, "search budget per level");
    a->add_option("--out", o.out, "output directory");
    a->add_option("--trials", o.trials, "number of trials");
    a->add_option("--samples", o.samples, "number of samples");
  };
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, auto fn) {
    auto* c = parent->add_subcommand(name, help);
    common(c);
    c->callback([&action, &o, fn] { action = [&o, fn] { return fn(o); }; });
    return c;
  };
  auto spread_source = [&](CLI::App* c) {
    c->add_option("kind,--kind", o.kind, "desarguesian, S, T or U");
    c->add_option("--set", o.set, "spread set M: field, dickson or hall");
    c->add_option("--set0", o.set0, "second spread set (M0 or M_i)");
    c->add_option("--in", o.in, "spread JSON file");
  };

  auto* field = app.add_subcommand("field", "finite fields")->require_subcommand(1);
  leaf(field, "info", "modulus and generator", field_info);

  auto* spread = app.add_subcommand("spread", "spreads of PG(rn-1,q)")->require_subcommand(1);
  spread_source(leaf(spread, "build", "construct a spread", spread_build));
  spread_source(leaf(spread, "verify", "check the spread property", spread_verify));
  spread_source(leaf(spread, "normals", "list the normal elements", spread_normals));
  spread_source(leaf(spread, "maxgp", "largest normal set in general position", spread_maxgp));

  auto* ss = app.add_subcommand("spreadset", "matrix spread sets and quasifields")->require_subcommand(1);
  leaf(ss, "search", "all closed spread sets containing 0 and I", spreadset_search)
      ->add_option("--closure", o.closure, "multiplication or addition");
  leaf(ss, "dickson", "the Dickson nearfield", spreadset_dickson);
  leaf(ss, "nuclei", "nuclei and center", spreadset_nuclei)->add_option("--set", o.set, "field, dickson or hall");
  leaf(ss, "axioms", "quasifield axioms", spreadset_axioms)->add_option("--set", o.set, "field, dickson or hall");

  leaf(&app, "regulus", "regulus closure at (0,I) of S(M)", regulus)->add_option("--set", o.set, "field, dickson or hall");

  auto* cl = app.add_subcommand("closure", "closure in PG(2,q)")->require_subcommand(1);
  auto* cr = leaf(cl, "run", "closure of a point set", closure_run);
  cr->add_option("--points", o.points, "x,y,z;x,y,z;...");
  cr->add_option("--pivots", o.pivots, "pivot points for the restricted closure");
  leaf(cl, "lemma53", "seeded restricted-closure trials", [](const Opts& x) { return scenario("lemma-5.3", x); });

  auto* sp = app.add_subcommand("sperner", "translation Sperner spaces")->require_subcommand(1);
  spread_source(leaf(sp, "build", "design of T(S)", sperner_build));
  spread_source(leaf(sp, "normals", "normal lines through the origin", sperner_normals));
  spread_source(leaf(sp, "export", "incidence CSV", sperner_export));

  auto* sc = app.add_subcommand("scenario", "named verification scenarios")->require_subcommand(1);
  leaf(sc, "run", "run one scenario", [](const Opts& x) { return scenario(x.name, x); })
      ->add_option("name", o.name, "scenario name")
      ->required();
  leaf(sc, "list", "list scenarios", scenario_list);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    app.exit(e, msg, msg);
    err << msg.str();
    return 2;
  }
  try {
    const Result res = action();
    emit(res, o, out);
    return res.code;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << "\n";
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
  } catch (const std::logic_error& e) {
    err << "invalid input: " << e.what() << "\n";
  } catch (const nlohmann::json::exception& e) {
    err << "invalid input: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace spreadlab::cli
