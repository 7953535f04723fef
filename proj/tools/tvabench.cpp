#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tva/algebra.hpp"
#include "tva/algebra_io.hpp"
#include "tva/completion.hpp"
#include "tva/logic.hpp"
#include "tva/proofterms.hpp"
#include "tva/semantics.hpp"
#include "tva/stt.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "tvabench 1.0.0";

// Exit codes: 0 positive verdict, 1 negative, 2 structural/parse error,
// 3 inconclusive (fuel or search budget ran out).
enum Exit { kPositive = 0, kNegative = 1, kStructural = 2, kInconclusive = 3 };

struct Options {
  int fuel = 10000;
  uint64_t bound = 0;  // 0 = command default
  std::string format = "text";
  std::string out;
  bool timings = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string content_hash(const std::string& bytes) {
  uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

const std::chrono::steady_clock::time_point g_start = std::chrono::steady_clock::now();

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;  // path, hash
  std::string verdict;
  std::vector<tva::Violation> witnesses;
  json data = json::object();
  int exit_code = kPositive;

  void add_input(const std::string& path) { inputs.push_back({path, content_hash(read_file(path))}); }

  void from_check(const tva::CheckReport& r, int fail_code = kNegative) {
    for (const auto& v : r.violations) witnesses.push_back(v);
    if (r.pass()) {
      verdict = "pass";
      exit_code = kPositive;
    } else {
      verdict = "fail";
      exit_code = fail_code;
    }
  }
};

void emit(const Report& rep, const Options& opt) {
  double elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - g_start).count();
  std::string text;
  if (opt.format == "structured") {
    json j;
    j["tool"] = kVersion;
    j["command"] = rep.command;
    j["inputs"] = json::array();
    for (const auto& [path, hash] : rep.inputs)
      j["inputs"].push_back({{"path", path}, {"hash", hash}});
    j["verdict"] = rep.verdict;
    j["witnesses"] = json::array();
    for (const auto& w : rep.witnesses)
      j["witnesses"].push_back({{"condition", w.condition}, {"witness", w.witness}});
    j["data"] = rep.data;
    // Timings vary between runs, so they are opt-in: the default report is
    // byte-identical across repeated runs.
    if (opt.timings) j["timings"] = {{"total_ms", elapsed_ms}};
    text = j.dump(2) + "\n";
  } else {
    std::ostringstream ss;
    ss << "command: " << rep.command << "\n";
    for (const auto& [path, hash] : rep.inputs) ss << "input: " << path << " " << hash << "\n";
    ss << "verdict: " << rep.verdict << "\n";
    for (const auto& w : rep.witnesses) {
      ss << "witness: " << w.condition;
      if (!w.witness.empty()) ss << " @ " << w.witness;
      ss << "\n";
    }
    for (auto it = rep.data.begin(); it != rep.data.end(); ++it)
      ss << it.key() << ": " << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump()) << "\n";
    if (opt.timings) ss << "total_ms: " << elapsed_ms << "\n";
    text = ss.str();
  }
  if (!opt.out.empty()) {
    std::ofstream o(opt.out, std::ios::binary);
    o << text;
  } else {
    std::cout << text;
  }
}

json order_pairs_json(const tva::TruthValueAlgebra& alg, const tva::OrderSpec& ord) {
  json pairs = json::array();
  for (int a = 0; a < ord.n; ++a)
    for (int b = 0; b < ord.n; ++b)
      if (a != b && ord.leq(a, b)) pairs.push_back({alg.carrier[a], alg.carrier[b]});
  return pairs;
}

std::map<std::string, int> domain_map(const tva::Theory& thy,
                                      const std::vector<std::string>& overrides) {
  std::map<std::string, int> sizes;
  for (const auto& s : thy.sig.sorts) sizes[s] = 1;
  for (const auto& spec : overrides) {
    auto eq = spec.find('=');
    if (eq == std::string::npos) throw std::runtime_error("bad --domain, expected sort=N: " + spec);
    std::string sort = spec.substr(0, eq);
    int n = std::stoi(spec.substr(eq + 1));
    if (n <= 0) throw std::runtime_error("domain size must be positive: " + spec);
    sizes[sort] = n;
  }
  return sizes;
}

tva::OrderSpec algebra_order(const tva::TruthValueAlgebra& alg, bool& found) {
  if (alg.order_pairs) {
    found = true;
    return tva::order_from_pairs(alg.size(), *alg.order_pairs);
  }
  auto ord = tva::find_complete_order(alg);
  found = ord.has_value();
  return found ? *ord : tva::OrderSpec{};
}

int cmd_check_algebra(const std::string& path, bool find_order, const Options& opt, Report& rep) {
  auto alg = tva::parse_algebra_file(path);
  tva::CheckReport all = tva::check_tva(alg);
  auto hey = tva::is_heyting(alg);
  rep.data["heyting"] = hey.heyting;
  if (!hey.heyting)
    rep.data["heyting_witness"] = {alg.carrier[hey.a], alg.carrier[hey.b]};
  if (alg.order_pairs) {
    auto ord = tva::order_from_pairs(alg.size(), *alg.order_pairs);
    all.merge(tva::check_ordered(alg, ord));
    all.merge(tva::check_complete(alg, ord).report);
  }
  if (find_order) {
    auto ord = tva::find_complete_order(alg);
    if (ord) {
      rep.data["order"] = "found";
      rep.data["order_pairs"] = order_pairs_json(alg, *ord);
    } else {
      rep.data["order"] = "none";
    }
  }
  rep.from_check(all);
  emit(rep, opt);
  return rep.exit_code;
}

int cmd_complete(const std::string& path, const Options& opt, Report& rep) {
  auto alg = tva::parse_algebra_file(path);
  auto res = tva::complete_algebra(alg);
  rep.data["size"] = res.closed.algebra.size();
  auto hey = tva::is_heyting(res.closed.algebra);
  rep.data["heyting"] = hey.heyting;
  json emb = json::array();
  bool injective = true;
  for (int a = 0; a < alg.size(); ++a) {
    emb.push_back({alg.carrier[a], res.closed.algebra.carrier[res.embedding[a]]});
    for (int b = 0; b < a; ++b)
      if (res.embedding[a] == res.embedding[b]) injective = false;
  }
  rep.data["embedding"] = emb;
  rep.data["embedding_injective"] = injective;
  if (!opt.out.empty()) {
    tva::TruthValueAlgebra out = res.closed.algebra;
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < out.size(); ++a)
      for (int b = 0; b < out.size(); ++b)
        if (a != b && res.closed.inclusion.leq(a, b)) pairs.push_back({a, b});
    out.order_pairs = pairs;
    tva::write_algebra_file(out, opt.out);
    rep.data["written"] = opt.out;
  }
  rep.from_check(res.verification);
  Options o = opt;
  o.out.clear();  // --out holds the completed algebra; report goes to stdout
  emit(rep, o);
  return rep.exit_code;
}

int cmd_find_order(const std::string& path, const Options& opt, Report& rep) {
  auto alg = tva::parse_algebra_file(path);
  auto ord = tva::find_complete_order(alg);
  if (ord) {
    rep.verdict = "found";
    rep.data["order_pairs"] = order_pairs_json(alg, *ord);
    rep.exit_code = kPositive;
  } else {
    rep.verdict = "none";
    rep.exit_code = kNegative;
  }
  emit(rep, opt);
  return rep.exit_code;
}

int cmd_check_model(const std::string& thy_path, const std::string& str_path, const Options& opt,
                    Report& rep) {
  auto thy = tva::parse_theory_file(thy_path);
  auto st = tva::parse_structure_file(str_path, thy);
  rep.from_check(tva::check_model(thy, st));
  emit(rep, opt);
  return rep.exit_code;
}

int cmd_find_model(const std::string& thy_path, const std::string& alg_path,
                   const std::vector<std::string>& domains, const Options& opt, Report& rep) {
  auto thy = tva::parse_theory_file(thy_path);
  auto alg = tva::parse_algebra_file(alg_path);
  tva::SearchLimits limits;
  if (opt.bound) limits.max_structures = opt.bound;
  try {
    auto model = tva::find_model(thy, alg, domain_map(thy, domains), limits);
    if (model) {
      rep.verdict = "model-found";
      rep.data["model"] = tva::serialize_structure(thy, *model, alg_path);
      rep.exit_code = kPositive;
    } else {
      rep.verdict = "no-model";
      rep.exit_code = kNegative;
    }
  } catch (const std::runtime_error& e) {
    rep.verdict = "inconclusive";
    rep.data["reason"] = e.what();
    rep.exit_code = kInconclusive;
  }
  emit(rep, opt);
  return rep.exit_code;
}

int cmd_fixpoint(const std::string& thy_path, const std::string& alg_path,
                 const std::vector<std::string>& domains, const Options& opt, Report& rep) {
  auto thy = tva::parse_theory_file(thy_path);
  auto alg = tva::parse_algebra_file(alg_path);
  bool have_order = false;
  auto ord = algebra_order(alg, have_order);
  if (!have_order) {
    rep.verdict = "fail";
    rep.witnesses.push_back({"fixpoint.order", "no complete order on the algebra"});
    rep.exit_code = kNegative;
    emit(rep, opt);
    return rep.exit_code;
  }
  auto res = tva::fixpoint_model(thy, alg, ord, domain_map(thy, domains), opt.fuel);
  rep.data["iterations"] = res.iterations;
  rep.data["monotone"] = res.monotone;
  tva::CheckReport all = res.report;
  if (res.report.pass()) {
    all.merge(tva::check_model(thy, res.structure));
    rep.data["model"] = tva::serialize_structure(thy, res.structure, alg_path);
  }
  rep.from_check(all);
  emit(rep, opt);
  return rep.exit_code;
}

int cmd_probe(const std::string& thy_path, const std::string& lib_dir, const Options& opt,
              Report& rep) {
  auto thy = tva::parse_theory_file(thy_path);
  std::vector<std::pair<std::string, tva::TruthValueAlgebra>> lib;
  std::vector<std::string> files;
  for (const auto& ent : fs::directory_iterator(lib_dir))
    if (ent.path().extension() == ".alg") files.push_back(ent.path().string());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw std::runtime_error("no .alg files in " + lib_dir);
  for (const auto& f : files) {
    rep.add_input(f);
    lib.push_back({fs::path(f).filename().string(), tva::parse_algebra_file(f)});
  }
  tva::SearchLimits limits;
  if (opt.bound) limits.max_structures = opt.bound;
  auto entries = tva::probe_super_consistency(thy, lib, limits);
  json per = json::array();
  bool refuted = false, inconclusive = false;
  for (const auto& e : entries) {
    const char* o = e.outcome == tva::ProbeOutcome::ModelFound  ? "model-found"
                    : e.outcome == tva::ProbeOutcome::NoModel   ? "no-model"
                                                                : "inconclusive";
    per.push_back({{"algebra", e.name}, {"outcome", o}});
    if (e.outcome == tva::ProbeOutcome::NoModel) {
      refuted = true;
      rep.witnesses.push_back({"probe.no-model", e.name});
    }
    if (e.outcome == tva::ProbeOutcome::Inconclusive) inconclusive = true;
  }
  rep.data["entries"] = per;
  if (refuted) {
    rep.verdict = "refuted";
    rep.exit_code = kNegative;
  } else if (inconclusive) {
    rep.verdict = "inconclusive";
    rep.exit_code = kInconclusive;
  } else {
    rep.verdict = "models-everywhere";
    rep.exit_code = kPositive;
  }
  emit(rep, opt);
  return rep.exit_code;
}

int cmd_stt(const std::string& alg_path, int depth, const Options& opt, Report& rep) {
  auto alg = tva::parse_algebra_file(alg_path);
  auto res = tva::build_stt_model(alg, depth, opt.bound ? opt.bound : 20000);
  rep.data["depth"] = depth;
  rep.data["sorts"] = res.theory.sig.sorts.size();
  rep.data["rules"] = res.theory.rules.size();
  rep.from_check(res.report);
  emit(rep, opt);
  return rep.exit_code;
}

int cmd_check_proof(const std::string& thy_path, const std::string& prf_path, const Options& opt,
                    Report& rep) {
  auto thy = tva::parse_theory_file(thy_path);
  auto pf = tva::parse_proof_file(prf_path, thy.sig);
  if (!pf.goal) throw std::runtime_error("proof file has no goal line");
  tva::Sequent seq{{}, *pf.goal};
  auto res = tva::check_proof(thy, seq, pf.proof, opt.fuel);
  rep.data["goal"] = tva::to_string(*pf.goal);
  switch (res.verdict) {
    case tva::ProofVerdict::Valid:
      rep.verdict = "valid";
      rep.exit_code = kPositive;
      break;
    case tva::ProofVerdict::Invalid:
      rep.verdict = "invalid";
      rep.exit_code = kNegative;
      rep.witnesses.push_back({res.position, res.detail});
      break;
    case tva::ProofVerdict::Unknown:
      rep.verdict = "unknown";
      rep.exit_code = kInconclusive;
      rep.witnesses.push_back({res.position, res.detail});
      break;
  }
  emit(rep, opt);
  return rep.exit_code;
}

int cmd_normalize_proof(const std::string& thy_path, const std::string& prf_path,
                        const Options& opt, Report& rep) {
  auto thy = tva::parse_theory_file(thy_path);
  auto pf = tva::parse_proof_file(prf_path, thy.sig);
  auto res = tva::sn_status(pf.proof, opt.fuel);
  switch (res.kind) {
    case tva::RedKind::Normal: {
      rep.verdict = "normal";
      rep.data["steps"] = res.steps;
      rep.data["normal_form"] = tva::to_string(res.normal_form);
      rep.exit_code = kPositive;
      break;
    }
    case tva::RedKind::Loop: {
      rep.verdict = "loop";
      json trace = json::array();
      for (const auto& t : res.trace) trace.push_back(tva::to_string(t));
      rep.data["cycle"] = trace;
      rep.exit_code = kNegative;
      break;
    }
    case tva::RedKind::FuelExhausted:
      rep.verdict = "inconclusive";
      rep.data["frontier"] = res.frontier;
      rep.exit_code = kInconclusive;
      break;
  }
  emit(rep, opt);
  return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification workbench for truth values algebras and rewrite theories"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--fuel", opt.fuel, "rewrite/reduction budget")->check(CLI::PositiveNumber);
  app.add_option("--bound", opt.bound, "search bound (structures, domain cap)")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", opt.format, "text|structured")
      ->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--out", opt.out, "write the primary output to PATH");
  app.add_flag("--timings", opt.timings, "include wall-clock timings in the report");

  std::string algebra, theory, structure, proof, libdir;
  std::vector<std::string> domains;
  bool find_order_flag = false;
  int depth = 2;

  auto* ca = app.add_subcommand("check-algebra", "check the algebra conditions");
  ca->add_option("algebra", algebra)->required();
  ca->add_flag("--find-order", find_order_flag, "also search for a complete order");

  auto* co = app.add_subcommand("complete", "closed-set completion of an algebra");
  co->add_option("algebra", algebra)->required();

  auto* fo = app.add_subcommand("find-order", "search for a complete order");
  fo->add_option("algebra", algebra)->required();

  auto* cm = app.add_subcommand("check-model", "check a structure against a theory");
  cm->add_option("theory", theory)->required();
  cm->add_option("structure", structure)->required();

  auto* fm = app.add_subcommand("find-model", "exhaustive model search");
  fm->add_option("theory", theory)->required();
  fm->add_option("algebra", algebra)->required();
  fm->add_option("--domain", domains, "per-sort domain size, sort=N");

  auto* fx = app.add_subcommand("fixpoint-model", "least-fixed-point model construction");
  fx->add_option("theory", theory)->required();
  fx->add_option("algebra", algebra)->required();
  fx->add_option("--domain", domains, "per-sort domain size, sort=N");

  auto* pr = app.add_subcommand("probe-super", "model search across an algebra library");
  pr->add_option("theory", theory)->required();
  pr->add_option("library", libdir)->required();

  auto* st = app.add_subcommand("stt-model", "typed-combinator theory model over an algebra");
  st->add_option("algebra", algebra)->required();
  st->add_option("--depth", depth, "maximum arrow nesting depth");

  auto* cp = app.add_subcommand("check-proof", "type-check a proof term");
  cp->add_option("theory", theory)->required();
  cp->add_option("proof", proof)->required();

  auto* np = app.add_subcommand("normalize-proof", "explore the reduction graph of a proof term");
  np->add_option("theory", theory)->required();
  np->add_option("proof", proof)->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  Report rep;
  try {
    auto* sub = app.get_subcommands().front();
    rep.command = sub->get_name();
    for (const auto& p : {algebra, theory, structure, proof})
      if (!p.empty()) rep.add_input(p);
    int code;
    if (sub == ca)
      code = cmd_check_algebra(algebra, find_order_flag, opt, rep);
    else if (sub == co)
      code = cmd_complete(algebra, opt, rep);
    else if (sub == fo)
      code = cmd_find_order(algebra, opt, rep);
    else if (sub == cm)
      code = cmd_check_model(theory, structure, opt, rep);
    else if (sub == fm)
      code = cmd_find_model(theory, algebra, domains, opt, rep);
    else if (sub == fx)
      code = cmd_fixpoint(theory, algebra, domains, opt, rep);
    else if (sub == pr)
      code = cmd_probe(theory, libdir, opt, rep);
    else if (sub == st)
      code = cmd_stt(algebra, depth, opt, rep);
    else if (sub == cp)
      code = cmd_check_proof(theory, proof, opt, rep);
    else
      code = cmd_normalize_proof(theory, proof, opt, rep);
    return code;
  } catch (const std::exception& e) {
    rep.verdict = "error";
    rep.witnesses.push_back({"error", e.what()});
    rep.exit_code = kStructural;
    emit(rep, opt);
    return kStructural;
  }
}
