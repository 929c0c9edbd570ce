#include "eawg/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "eawg/error.hpp"

namespace eawg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string supp_string(const std::vector<SubsetJ> &supp) {
  std::string s = "[";
  for (std::size_t i = 0; i < supp.size(); ++i) {
    if (i) s += ",";
    s += supp[i].to_string();
  }
  return s + "]";
}

std::size_t pair_count(int nu) { return static_cast<std::size_t>(nu) * (nu - 1) / 2; }

bool screen_contradicts(Minimality m, bool pbc) {
  return (m == Minimality::Minimal && !pbc) || (m == Minimality::NotMinimal && pbc);
}

std::vector<std::string> path_breaches(const EarsSpec &spec, const DecisionReport &d,
                                       const CenterStructure &c, bool fg) {
  std::vector<std::string> out;
  if (c.torsion_order() != d.inc)
    out.push_back("torsion order " + std::to_string(c.torsion_order()) + " != inc " +
                  std::to_string(d.inc));
  for (auto f : c.torsion)
    if (f != 2) out.push_back("torsion factor " + std::to_string(f) + " != 2");
  if (c.free_rank != pair_count(spec.nullity()))
    out.push_back("free rank " + std::to_string(c.free_rank) + " != " +
                  std::to_string(pair_count(spec.nullity())));
  if (fg != d.has_pbc)
    out.push_back(std::string("FG reduction gives pbc=") + (fg ? "true" : "false") +
                  " against enumeration");
  return out;
}

}  // namespace

ExitCode RunReport::exit_code() const {
  if (!breaches.empty()) return ExitCode::Internal;
  return decision.has_pbc ? ExitCode::Ok : ExitCode::NoPbc;
}

RunReport run_check(const EarsSpec &spec, std::size_t max_witnesses) {
  const auto start = Clock::now();
  RunReport r(spec);
  r.decision = count_collections(spec, max_witnesses);
  r.center = center_structure(spec);
  r.fg_pbc = decide_pbc_via_FG(spec);
  r.screen = minimality_screen(spec);
  r.closed_n0 = closed_form_n0(spec);
  r.breaches = path_breaches(spec, r.decision, r.center, r.fg_pbc);
  if (screen_contradicts(r.screen.verdict, r.decision.has_pbc))
    r.breaches.push_back("screen verdict " + to_string(r.screen.verdict) + " contradicts pbc");
  if (r.closed_n0 && *r.closed_n0 != r.decision.n0)
    r.breaches.push_back("closed form n0=" + std::to_string(*r.closed_n0) + " != " +
                         std::to_string(r.decision.n0));
  r.wall_seconds = seconds_since(start);
  return r;
}

Json to_json(const RunReport &r) {
  Json j;
  if (!r.source.empty()) j["source"] = r.source;
  j["spec"] = to_json(r.spec);
  j["decision"] = to_json(r.decision);
  j["center"] = to_json(r.center);
  j["fg_pbc"] = r.fg_pbc;
  j["screen"] = to_string(r.screen.verdict);
  j["closed_form_n0"] = r.closed_n0 ? Json(*r.closed_n0) : Json(nullptr);
  j["consistent"] = r.breaches.empty();
  j["breaches"] = r.breaches;
  j["wall_seconds"] = r.wall_seconds;
  return j;
}

// ---------------------------------------------------------------------------

bool ClassifyResult::consistent() const {
  return screen_disagreements == 0 && path_disagreements == 0 && index7_rule.value_or(true);
}

namespace {

std::vector<Semilattice> side_classes(int dim, bool lattice_only, bool up_to_permutation) {
  if (lattice_only) return {Semilattice::lattice(dim)};
  return enumerate_semilattices(dim, up_to_permutation);
}

ClassifyRow classify_one(const EarsSpec &spec) {
  ClassifyRow row;
  row.s1 = spec.s1();
  row.s2 = spec.s2();
  const DecisionReport d = count_collections(spec, 0);
  const CenterStructure c = center_structure(spec);
  const bool fg = decide_pbc_via_FG(spec);
  row.inc = d.inc;
  row.n0 = d.n0;
  row.pbc = d.has_pbc;
  row.screen = minimality_screen(spec).verdict;
  const auto closed = closed_form_n0(spec);
  row.paths_agree = path_breaches(spec, d, c, fg).empty() && (!closed || *closed == d.n0);
  return row;
}

template <class F>
void parallel_for(std::size_t n, F &&body) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](std::size_t w) {
    try {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    } catch (...) {
      errors[w] = std::current_exception();
      next = n;
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto &t : pool) t.join();
  }
  for (auto &e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

ClassifyResult classify(FiniteType type, int nullity, int twist, bool up_to_permutation) {
  if (nullity > 4)
    throw Error(Errc::DimTooLarge, "classification limited to nullity <= 4, got " +
                                       std::to_string(nullity));
  if (nullity < 0) throw Error(Errc::ValidationError, "negative nullity");
  if (twist < 0 || twist > nullity)
    throw Error(Errc::TwistOutOfRange,
                "twist " + std::to_string(twist) + " not in 0.." + std::to_string(nullity));
  const bool exceptional = type.tag == TypeTag::F4 || type.tag == TypeTag::G2;
  const bool b2 = type.tag == TypeTag::B && type.rank == 2;
  const bool free1 = !exceptional && !(type.tag == TypeTag::C && type.rank >= 3);
  const bool free2 = !exceptional && !(type.tag == TypeTag::B && type.rank >= 3);
  const auto c1 = side_classes(twist, !free1, up_to_permutation);
  const auto c2 = side_classes(nullity - twist, !free2, up_to_permutation);

  ClassifyResult res;
  res.type = type;
  res.nullity = nullity;
  res.twist = twist;
  res.up_to_permutation = up_to_permutation;
  std::vector<EarsSpec> specs;
  for (const auto &s1 : c1)
    for (const auto &s2 : c2) specs.push_back(EarsSpec::make(type, nullity, twist, s1, s2));
  res.rows.resize(specs.size());
  parallel_for(specs.size(), [&](std::size_t i) { res.rows[i] = classify_one(specs[i]); });

  const bool side1 = type.tag == TypeTag::B;
  const bool side2 = type.tag == TypeTag::C || b2;
  const bool small = (!side1 || twist <= 3) && (!side2 || nullity - twist <= 3);
  bool rule = true;
  for (const auto &row : res.rows) {
    res.pbc_false += !row.pbc;
    res.path_disagreements += !row.paths_agree;
    if (row.screen != Minimality::Unknown) {
      ++res.screen_decided;
      res.screen_disagreements += screen_contradicts(row.screen, row.pbc);
    }
    const bool seven = (side1 && row.s1.index() == 7) || (side2 && row.s2.index() == 7);
    rule = rule && (seven == !row.pbc);
  }
  if (small) res.index7_rule = rule;
  return res;
}

Json to_json(const ClassifyResult &res) {
  Json j;
  j["type"] = res.type.name();
  j["nullity"] = res.nullity;
  j["twist"] = res.twist;
  j["up_to_permutation"] = res.up_to_permutation;
  Json rows = Json::array();
  for (const auto &row : res.rows)
    rows.push_back(Json{{"supp1", supp_to_json(row.s1.supp())},
                        {"supp2", supp_to_json(row.s2.supp())},
                        {"ind1", row.s1.index()},
                        {"ind2", row.s2.index()},
                        {"inc", row.inc},
                        {"n0", row.n0},
                        {"pbc", row.pbc},
                        {"screen", to_string(row.screen)},
                        {"paths_agree", row.paths_agree}});
  j["rows"] = std::move(rows);
  j["summary"] = Json{{"rows", res.rows.size()},
                      {"pbc_false", res.pbc_false},
                      {"screen_decided", res.screen_decided},
                      {"screen_disagreements", res.screen_disagreements},
                      {"path_disagreements", res.path_disagreements},
                      {"index7_rule", res.index7_rule ? Json(*res.index7_rule) : Json(nullptr)},
                      {"consistent", res.consistent()}};
  return j;
}

void print_table(const ClassifyResult &res, std::ostream &out) {
  out << res.type.name() << " nu=" << res.nullity << " t=" << res.twist
      << (res.up_to_permutation ? " (up to permutation)" : " (all classes)") << "\n";
  out << std::left << std::setw(5) << "ind1" << std::setw(5) << "ind2" << std::setw(6) << "inc"
      << std::setw(4) << "n0" << std::setw(7) << "pbc" << std::setw(12) << "screen"
      << std::setw(7) << "agree" << "supp1 | supp2\n";
  for (const auto &row : res.rows) {
    out << std::left << std::setw(5) << row.s1.index() << std::setw(5) << row.s2.index()
        << std::setw(6) << row.inc << std::setw(4) << row.n0 << std::setw(7)
        << (row.pbc ? "true" : "false") << std::setw(12) << to_string(row.screen) << std::setw(7)
        << (row.paths_agree ? "yes" : "NO") << supp_string(row.s1.supp()) << " | "
        << supp_string(row.s2.supp()) << "\n";
  }
  out << "summary: rows=" << res.rows.size() << " pbc_false=" << res.pbc_false
      << " screen_decided=" << res.screen_decided
      << " screen_disagreements=" << res.screen_disagreements
      << " path_disagreements=" << res.path_disagreements << " index7_rule="
      << (res.index7_rule ? (*res.index7_rule ? "holds" : "FAILS") : "n/a")
      << " consistent=" << (res.consistent() ? "yes" : "NO") << "\n";
}

// ---------------------------------------------------------------------------

bool VerifyRun::passed() const {
  return pox.passed() && lemma.passed() && orbit.complete() && free_center.passed();
}

VerifyRun run_verify(const EarsSpec &spec, int height_bound) {
  if (spec.rank() > 4 || spec.nullity() > 4)
    throw Error(Errc::ValidationError, "verification limited to rank <= 4 and nullity <= 4");
  if (height_bound < 0) throw Error(Errc::ValidationError, "negative height bound");
  const auto start = Clock::now();
  VerifyRun run;
  run.pox = verify_pox_images(spec);
  run.lemma = verify_lemma_images(spec);
  run.orbit = orbit_cover(spec, height_bound);
  run.free_center = free_center_check(spec, kFreeCenterBound);
  run.wall_seconds = seconds_since(start);
  return run;
}

Json to_json(const VerifyRun &run) {
  Json j;
  if (!run.source.empty()) j["source"] = run.source;
  j["pox"] = to_json(run.pox);
  j["lemma"] = to_json(run.lemma);
  j["orbit_cover"] = to_json(run.orbit);
  j["free_center"] = to_json(run.free_center);
  j["pass"] = run.passed();
  j["wall_seconds"] = run.wall_seconds;
  return j;
}

EarsSpec load_spec_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  EarsSpec spec = validate_spec(parse_spec_json(buf.str()));
  if (spec.label().empty()) spec.set_label(path);
  return spec;
}

// ---------------------------------------------------------------------------

namespace {

ExitCode worst(ExitCode a, ExitCode b) {
  auto rank = [](ExitCode c) {
    switch (c) {
      case ExitCode::Ok: return 0;
      case ExitCode::NoPbc: return 1;
      case ExitCode::Input: return 2;
      case ExitCode::Internal: return 3;
    }
    return 3;
  };
  return rank(a) >= rank(b) ? a : b;
}

ExitCode error_code(const Error &e) { return e.is_internal() ? ExitCode::Internal : ExitCode::Input; }

void report_error(std::ostream &err, const std::string &where, const Error &e) {
  err << "error: " << where << (where.empty() ? "" : ": ") << e.what() << "\n";
}

void print_check(const RunReport &r, std::ostream &out) {
  const EarsSpec &s = r.spec;
  out << "spec: " << s.label() << "\n";
  out << "  type " << s.type().name() << ", nu=" << s.nullity() << ", t=" << s.twist()
      << ", ind(S1)=" << s.s1().index() << ", ind(S2)=" << s.s2().index() << "\n";
  out << "  |J|=" << r.decision.jset_size << "  Inc=" << r.decision.inc << "  n0=" << r.decision.n0
      << "  PbC=" << (r.decision.has_pbc ? "true" : "false") << "\n";
  out << "  center: free rank " << r.center.free_rank << ", torsion [";
  for (std::size_t i = 0; i < r.center.torsion.size(); ++i)
    out << (i ? "," : "") << r.center.torsion[i];
  out << "]\n";
  out << "  FG reduction: pbc=" << (r.fg_pbc ? "true" : "false")
      << "  screen: " << to_string(r.screen.verdict) << "\n";
  for (const auto &n : r.decision.corollary_notes)
    out << "  corollary " << n.name << ": " << n.verdict << (n.detail.empty() ? "" : " (")
        << n.detail << (n.detail.empty() ? "" : ")") << "\n";
  for (const auto &w : r.decision.witnesses) out << "  witness " << supp_string(w.support()) << "\n";
  for (const auto &b : r.breaches) out << "  BREACH " << b << "\n";
  out << "  verdict: " << (r.decision.has_pbc ? "has" : "does not have")
      << " the presentation by conjugation\n";
}

void print_report(const std::string &name, const VerificationReport &rep, std::ostream &out) {
  out << "  " << name << ": " << rep.checks.size() << " checks, " << rep.failures()
      << " failures\n";
  for (const auto &c : rep.checks)
    if (!c.pass) out << "    FAIL " << c.identity << " " << c.detail << "\n";
}

void print_verify(const std::string &label, const VerifyRun &run, std::ostream &out) {
  out << "spec: " << label << "\n";
  print_report("pox", run.pox, out);
  print_report("lemma", run.lemma, out);
  out << "  orbit cover (height <= " << run.orbit.height_bound << "): " << run.orbit.reached_count
      << "/" << run.orbit.target_count << " roots reached\n";
  for (const auto &r : run.orbit.unreached) out << "    UNREACHED " << to_string(r) << "\n";
  out << "  free center: " << run.free_center.generators << " generators, rank "
      << run.free_center.rank << ", " << run.free_center.products_checked << " products, "
      << run.free_center.trivial_products.size() << " trivial\n";
  out << "  verdict: " << (run.passed() ? "all pass" : "FAILURES") << "\n";
}

int cmd_check(const std::vector<std::string> &files, bool json, std::size_t max_witnesses,
              std::ostream &out, std::ostream &err) {
  ExitCode code = ExitCode::Ok;
  Json reports = Json::array();
  for (const auto &file : files) {
    try {
      RunReport r = run_check(load_spec_file(file), max_witnesses);
      r.source = file;
      code = worst(code, r.exit_code());
      if (json)
        reports.push_back(to_json(r));
      else
        print_check(r, out);
      for (const auto &b : r.breaches) err << "breach: " << file << ": " << b << "\n";
    } catch (const Error &e) {
      code = worst(code, error_code(e));
      report_error(err, file, e);
      if (json) reports.push_back(Json{{"source", file}, {"error", to_string(e.code())}, {"message", e.what()}});
    }
  }
  if (json) out << pretty(Json{{"version", kVersion}, {"reports", std::move(reports)}}) << "\n";
  return static_cast<int>(code);
}

int cmd_verify(const std::vector<std::string> &files, int height, bool json, std::ostream &out,
               std::ostream &err) {
  ExitCode code = ExitCode::Ok;
  Json runs = Json::array();
  for (const auto &file : files) {
    try {
      const EarsSpec spec = load_spec_file(file);
      VerifyRun run = run_verify(spec, height);
      run.source = file;
      if (!run.passed()) code = worst(code, ExitCode::Internal);
      if (json)
        runs.push_back(to_json(run));
      else
        print_verify(spec.label(), run, out);
    } catch (const Error &e) {
      code = worst(code, error_code(e));
      report_error(err, file, e);
      if (json) runs.push_back(Json{{"source", file}, {"error", to_string(e.code())}, {"message", e.what()}});
    }
  }
  if (json) out << pretty(Json{{"version", kVersion}, {"runs", std::move(runs)}}) << "\n";
  return static_cast<int>(code);
}

int cmd_classify(const std::string &type, int rank, int nullity, int twist, bool no_perm, bool json,
                 std::ostream &out) {
  const ClassifyResult res =
      classify(FiniteType::make(FiniteType::parse_tag(type), rank), nullity, twist, !no_perm);
  if (json)
    out << pretty(to_json(res)) << "\n";
  else
    print_table(res, out);
  return static_cast<int>(res.consistent() ? ExitCode::Ok : ExitCode::Internal);
}

int cmd_construct(const std::string &type, int nullity, int twist, std::optional<int> m1,
                  std::optional<int> m2, int rank, std::ostream &out, std::ostream &err) {
  const TypeTag tag = FiniteType::parse_tag(type);
  if (tag != TypeTag::B && tag != TypeTag::C)
    throw Error(Errc::UnsupportedType, "construction applies to types B and C");
  const bool side1 = tag == TypeTag::B;
  const std::optional<int> &m = side1 ? m1 : m2;
  const std::optional<int> &other = side1 ? m2 : m1;
  if (!m) throw Error(Errc::ValidationError, side1 ? "--m1 is required for type B" : "--m2 is required for type C");
  const int other_dim = side1 ? nullity - twist : twist;
  if (other && (other_dim < 0 || *other != (1 << other_dim) - 1))
    throw Error(Errc::ValidationError, "the other semilattice is a lattice of index " +
                                           std::to_string(other_dim < 0 ? 0 : (1 << other_dim) - 1));
  const EarsSpec spec = construct_nonminimal(tag, nullity, twist, side1 ? *m : 0, side1 ? 0 : *m, rank);
  const RunReport r = run_check(spec, 1);
  if (r.decision.has_pbc || !r.breaches.empty())
    throw Error(Errc::SearchExhausted, "constructed spec failed its certification");
  out << pretty(to_json(spec)) << "\n";
  err << "certified: Inc=" << r.decision.inc << ", PbC=false\n";
  return static_cast<int>(ExitCode::Ok);
}

}  // namespace

int run_cli(int argc, char **argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Presentation by conjugation for extended affine Weyl groups", "eawg"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::vector<std::string> files;
  bool json = false;
  std::size_t max_witnesses = kDefaultMaxWitnesses;
  int height = 1;
  std::string type;
  int rank = 3;
  int nullity = 0;
  int twist = 0;
  bool no_perm = false;
  std::optional<int> m1;
  std::optional<int> m2;

  auto *check = app.add_subcommand("check", "decide the presentation by conjugation for spec files");
  check->add_option("files", files, "spec JSON files")->required();
  check->add_flag("--json", json, "machine-readable output");
  check->add_option("--max-witnesses", max_witnesses, "nontrivial collections to list");

  auto *cls = app.add_subcommand("classify", "sweep all semilattice pairs of a type");
  cls->add_option("type", type, "B, C, F4 or G2")->required();
  cls->add_option("rank", rank, "rank of the finite root system")->required();
  cls->add_option("nullity", nullity, "nullity (<= 4)")->required();
  cls->add_option("twist", twist, "twist number")->required();
  cls->add_flag("--no-perm", no_perm, "list every class instead of one per permutation orbit");
  cls->add_flag("--json", json, "machine-readable output");

  auto *ver = app.add_subcommand("verify", "run the reflection-matrix identity checks");
  ver->add_option("files", files, "spec JSON files")->required();
  ver->add_option("--height", height, "height bound for the orbit cover");
  ver->add_flag("--json", json, "machine-readable output");

  auto *con = app.add_subcommand("construct", "search for a non-minimal spec");
  con->add_option("type", type, "B or C")->required();
  con->add_option("nullity", nullity, "nullity")->required();
  con->add_option("twist", twist, "twist number")->required();
  con->add_option("--m1", m1, "index of S1 (type B)");
  con->add_option("--m2", m2, "index of S2 (type C)");
  con->add_option("--rank", rank, "rank of the finite root system");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion &) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Input);
  }

  try {
    if (check->parsed()) return cmd_check(files, json, max_witnesses, out, err);
    if (ver->parsed()) return cmd_verify(files, height, json, out, err);
    if (cls->parsed()) return cmd_classify(type, rank, nullity, twist, no_perm, json, out);
    if (con->parsed()) return cmd_construct(type, nullity, twist, m1, m2, rank, out, err);
  } catch (const Error &e) {
    report_error(err, "", e);
    return static_cast<int>(error_code(e));
  } catch (const std::exception &e) {
    err << "error: internal: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Internal);
  }
  return static_cast<int>(ExitCode::Input);
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.push_back("eawg");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char *> argv;
  for (auto &s : storage) argv.push_back(s.data());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace eawg
