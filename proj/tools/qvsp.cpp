// qvsp: construct, verify, analyze and bound vector space partitions.
//
// Exit codes: 0 success/valid, 1 invalid object, 2 usage, 3 budget.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"

#include "qvsp/bounds.hpp"
#include "qvsp/constructions.hpp"
#include "qvsp/divisibility.hpp"
#include "qvsp/ilp_model.hpp"
#include "qvsp/json_io.hpp"
#include "qvsp/lp.hpp"
#include "qvsp/version.hpp"

namespace {

using qvsp::Json;

enum Exit { kOk = 0, kInvalid = 1, kUsage = 2, kBudget = 3 };

struct Options {
  std::optional<std::uint64_t> budget;
  std::string out;
  std::string replay;

  std::string name;
  int q = 2;
  std::optional<int> v, k, d, t, a, s, r, n, m4;
  std::string file, file2;
  bool pairs = false, holes = false, divisible = false;

  bool empty = false, force_budget = false;
  std::string from_partition, export_path, solve;
  std::uint64_t node_budget = 1'000'000;
  std::optional<int> time_limit;
};

struct Output {
  int code = kOk;
  std::string text;         // what goes to stdout or --out
  std::optional<Json> report;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qvsp::ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes via a temporary file in the same directory and a rename.
void write_atomically(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

Json rational_json(const qvsp::Rational& r) {
  if (qvsp::is_integral(r)) return qvsp::big_to_json(boost::multiprecision::numerator(r));
  return r.str();
}

qvsp::SubspaceSet to_set(const qvsp::SubspaceFile& f) {
  for (const auto& U : f.members)
    if (U.dim() != f.t)
      throw qvsp::DomainError("member " + U.to_string() + " is not " + std::to_string(f.t) +
                              "-dimensional; use --holes for partitions");
  return qvsp::SubspaceSet(qvsp::field_of_order(f.q), f.v, f.t, f.members);
}

qvsp::SubspaceSet load_set(const std::string& path) { return to_set(qvsp::parse_subspace_file(read_file(path))); }

qvsp::SubspaceSet default_spread(int q) {
  auto F = qvsp::field_of_order(q);
  return qvsp::subfield_spread(F, 2, 2).to_set(F);
}

// --- construct ---------------------------------------------------------------

Output cmd_construct(const Options& o) {
  auto F = qvsp::field_of_order(o.q);
  Output out;
  std::string summary;
  auto emit_partition = [&](const qvsp::TPartition& P) {
    out.text = qvsp::dump_subspace_file(P);
    summary = "type " + P.type().render();
  };
  auto emit_set = [&](const qvsp::SubspaceSet& N) {
    out.text = qvsp::dump_subspace_file(N);
    summary = "members " + std::to_string(N.size());
  };
  if (o.name == "lifted-mrd") {
    const int v = o.v.value_or(7), k = o.k.value_or(3), d = o.d.value_or(4);
    auto code = qvsp::lifted_mrd(F, v, k, d);
    emit_set(qvsp::SubspaceSet(F, v, k, code.codewords));
  } else if (o.name == "mrd-partition") {
    emit_partition(qvsp::mrd_partition(F, o.v.value_or(6), o.k.value_or(3), o.t.value_or(1)));
  } else if (o.name == "f27-a") {
    emit_partition(qvsp::f27_construction(F, qvsp::F27Variant::A));
  } else if (o.name == "f27-b") {
    emit_partition(qvsp::f27_construction(F, qvsp::F27Variant::B));
  } else if (o.name == "spread") {
    emit_set(qvsp::subfield_spread(F, o.t.value_or(2), o.a.value_or(2)).to_set(F));
  } else if (o.name == "all-grid") {
    emit_set(qvsp::all_t_subspaces(F, o.v.value_or(4), o.t.value_or(2)));
  } else if (o.name == "lift") {
    const auto N = o.file.empty() ? default_spread(o.q) : load_set(o.file);
    emit_set(qvsp::lift_set(N, o.s.value_or(1)));
  } else if (o.name == "concat") {
    const auto N1 = o.file.empty() ? default_spread(o.q) : load_set(o.file);
    const auto N2 = o.file2.empty() ? default_spread(o.q) : load_set(o.file2);
    emit_set(qvsp::concat_sets(N1, N2));
  } else {
    throw qvsp::DomainError("unknown construction " + o.name);
  }
  std::cerr << o.name << ": " << summary << '\n';
  return out;
}

// --- verify / spectrum -------------------------------------------------------

Json cmd_verify(const Options& o, int& code) {
  const auto f = qvsp::parse_subspace_file(read_file(o.file));
  const int t = o.t.value_or(f.t);
  auto F = qvsp::field_of_order(f.q);
  for (const auto& U : f.members)
    if (U.dim() < t) {
      code = kInvalid;
      Json j;
      j["valid"] = false;
      j["t"] = t;
      j["reason"] = "member " + U.to_string() + " has dimension below t";
      return j;
    }
  if (t < 1 || t > f.v) throw qvsp::DomainError("--t must lie in [1, v]");
  const auto report = qvsp::verify_partition(*F, f.v, f.members, t);
  code = report.valid ? kOk : kInvalid;
  if (!report.valid)
    std::cerr << "witness " << report.witness->to_string() << " covered " << report.witness_cover_count << " times\n";
  return qvsp::verification_json(report, t);
}

Json cmd_spectrum(const Options& o) {
  auto f = qvsp::parse_subspace_file(read_file(o.file));
  if (o.holes) {
    std::vector<qvsp::Subspace> holes;
    for (const auto& U : f.members)
      if (U.dim() == f.t) holes.push_back(U);
    f.members = std::move(holes);
  }
  const auto N = to_set(f);
  const auto S = qvsp::spectrum(N);
  Json j = qvsp::spectrum_json(S);
  if (o.pairs) j["pairs"] = qvsp::pair_profile_json(qvsp::pair_profile(N, S));
  return j;
}

// --- bound -------------------------------------------------------------------

int need(const std::optional<int>& x, const char* name) {
  if (!x) throw qvsp::DomainError(std::string("missing --") + name);
  return *x;
}

Json cmd_bound(const std::string& which, const Options& o) {
  qvsp::BoundReport r;
  if (which == "min-card") {
    const int t = need(o.t, "t"), rr = need(o.r, "r");
    const auto b = qvsp::min_card_bound(o.q, t, rr);
    r.parameters = {{"q", o.q}, {"t", t}, {"r", rr}};
    r.value = {{"divisible", qvsp::big_to_json(b.divisible)},
               {"nondivisible", qvsp::big_to_json(b.nondivisible)},
               {"kappa", b.kappa},
               {"kappa_applied", b.kappa_applied}};
  } else if (which == "tail") {
    const int k = need(o.k, "k"), rr = need(o.r, "r");
    r.parameters = {{"q", o.q}, {"k", k}, {"r", rr}, {"divisible", o.divisible}};
    r.value = qvsp::big_to_json(qvsp::tail_bound(o.q, k, rr, o.divisible));
  } else if (which == "exclusion") {
    const int rr = need(o.r, "r"), n = need(o.n, "n");
    if (n < 0) throw qvsp::DomainError("--n must be non-negative");
    const auto e = qvsp::exclusion_check(o.q, rr, static_cast<std::uint64_t>(n));
    r.parameters = {{"q", o.q}, {"r", rr}, {"n", n}};
    r.value = {{"in_range", e.in_range}, {"excluded", e.excluded}};
    r.value["representation"] =
        e.representation ? Json::array({e.representation->first, e.representation->second}) : Json(nullptr);
  } else if (which == "m3") {
    r = qvsp::m3_report(need(o.m4, "m4"));
  } else if (which == "mrd-like") {
    const int v = need(o.v, "v"), k = need(o.k, "k");
    r.parameters = {{"q", o.q}, {"v", v}, {"k", k}};
    r.value = qvsp::big_to_json(qvsp::mrd_like_bound(o.q, v, k, true));
  } else if (which == "fixture") {
    r = qvsp::fixture_report(o.q, need(o.v, "v"), need(o.d, "d"), need(o.k, "k"));
  } else {
    throw qvsp::DomainError("unknown bound " + which);
  }
  return r.to_json();
}

// --- lp ----------------------------------------------------------------------

Json cmd_lp(const Options& o, int& code) {
  if (o.empty == !o.from_partition.empty()) throw qvsp::DomainError("give exactly one of --empty and --from-partition");
  if (!o.solve.empty() && o.solve != "small" && o.solve != "relaxation")
    throw qvsp::DomainError("--solve takes small or relaxation");
  Json j;
  qvsp::LPModel model;
  int q = o.q, v = o.v.value_or(7);
  bool packing = false;
  auto F = qvsp::field_of_order(q);
  if (!o.from_partition.empty()) {
    const auto f = qvsp::parse_subspace_file(read_file(o.from_partition));
    q = f.q;
    v = f.v;
    F = qvsp::field_of_order(q);
    if (q != 2 || v != 7) throw qvsp::DomainError("--from-partition needs a file over F_2^7");
    std::vector<qvsp::Subspace> solids;
    for (const auto& U : f.members)
      if (U.dim() == 4) solids.push_back(U);
    model = qvsp::build_ilp(*F, solids);
    const auto profile = qvsp::tau_profile(*F, 7, solids);
    j["solids"] = solids.size();
    j["tau_profile"] = Json::object();
    for (const auto& [i, n] : profile) j["tau_profile"][std::to_string(i)] = n;
    j["point_count_bound"] = qvsp::profile_m3_bound(profile);
  } else if (q == 2 && v == 7) {
    model = qvsp::build_ilp(*F, {});
  } else {
    model = qvsp::build_plane_packing_ilp(*F, v);
    packing = true;
  }
  j["q"] = q;
  j["v"] = v;
  j["model"] = packing ? "plane-packing" : "plane-completion";
  j["variables"] = model.variable_count();
  j["constraints"] = model.constraint_count();

  if (!o.export_path.empty()) {
    const std::string text = qvsp::export_lp(model);
    write_atomically(o.export_path, text);
    j["export"] = {{"path", o.export_path}, {"bytes", text.size()}, {"fnv1a64", hex64(fnv1a64(text))}};
  }
  if (o.solve.empty()) return j;
  if (q == 2 && v == 7 && !o.force_budget)
    throw qvsp::BudgetExceeded("the F_2^7 model is export-only by default; pass --force-budget to run the exact solver");

  qvsp::LPOptions lp_opt;
  if (o.force_budget) lp_opt.max_tableau_entries = UINT64_MAX;
  if (o.time_limit || o.force_budget)
    lp_opt.deadline = std::chrono::steady_clock::now() + std::chrono::seconds(o.time_limit.value_or(600));
  if (o.solve == "relaxation") {
    const auto r = qvsp::solve_lp(model, lp_opt);
    j["lp"] = {{"status", qvsp::to_string(r.status)}, {"pivots", r.pivots}};
    if (r.status == qvsp::LPStatus::optimal) j["lp"]["objective"] = rational_json(r.objective);
    if (r.status == qvsp::LPStatus::budget_exhausted) code = kBudget;
    return j;
  }
  if (packing) {
    const auto fixed = qvsp::fix_plane_symmetry(model, *F, v);
    j["fixed"] = fixed;
  }
  const auto r = qvsp::solve_ilp_small(model, o.node_budget, lp_opt);
  j["ilp"] = {{"status", qvsp::to_string(r.status)}, {"nodes", r.nodes}};
  j["ilp"]["optimum"] = r.incumbent ? rational_json(*r.incumbent) : Json(nullptr);
  j["ilp"]["upper_bound"] = r.upper_bound ? rational_json(*r.upper_bound) : Json(nullptr);
  if (r.status == qvsp::LPStatus::budget_exhausted) code = kBudget;
  return j;
}

// --- driver ------------------------------------------------------------------

Output execute(std::vector<std::string> args);

/// Rebuilds the argument list of a report and compares the fresh result.
Json cmd_replay(const std::string& path, int& code) {
  Json rep;
  try {
    rep = Json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw qvsp::ParseError(std::string("invalid report: ") + e.what());
  }
  if (!rep.is_object() || !rep.contains("command") || !rep.contains("parameters") || !rep.contains("result"))
    throw qvsp::ParseError("not a command report");
  std::vector<std::string> args;
  const Json& params = rep["parameters"];
  if (params.contains("budget")) {
    args.push_back("--budget");
    args.push_back(params["budget"].dump());
  }
  std::istringstream words(rep["command"].get<std::string>());
  for (std::string w; words >> w;) args.push_back(w);
  for (const auto& [key, value] : params.items()) {
    if (key == "budget") continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back("--" + key);
    } else if (!value.is_null()) {
      args.push_back("--" + key);
      args.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
  }
  const Output again = execute(args);
  const bool match = again.report && (*again.report)["result"] == rep["result"];
  code = match ? kOk : kInvalid;
  Json j;
  j["replayed"] = rep["command"];
  j["match"] = match;
  j["exit_code"] = again.code;
  return j;
}

/// Options given on the selected subcommand chain, integers as numbers.
Json given_parameters(CLI::App* sub) {
  Json j = Json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty() || opt->count() == 0) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help") continue;
    if (opt->get_items_expected_max() == 0) {
      j[name] = true;
      continue;
    }
    const std::string& value = opt->results().front();
    try {
      std::size_t used = 0;
      const long long x = std::stoll(value, &used);
      if (used == value.size()) {
        j[name] = x;
        continue;
      }
    } catch (const std::exception&) {
    }
    j[name] = value;
  }
  return j;
}

Output execute(std::vector<std::string> args) {
  Options o;
  CLI::App app{"Vector space partitions: constructions, verification, divisibility and bounds", "qvsp"};
  app.set_version_flag("--version", qvsp::kVersion);
  app.add_option("--budget", o.budget, "enumeration budget (overrides QVSP_BUDGET)");
  app.add_option("--out", o.out, "write output to this file (atomically)");
  app.add_option("--replay", o.replay, "re-run the command recorded in a report and compare results");
  app.require_subcommand(0, 1);
  app.fallthrough();

  auto* construct = app.add_subcommand("construct", "build a registered construction, print its JSON");
  construct->add_option("name", o.name, "construction name")
      ->required()
      ->check(CLI::IsMember({"lifted-mrd", "mrd-partition", "f27-a", "f27-b", "spread", "all-grid", "lift", "concat"}));
  construct->add_option("--q", o.q, "field order")->capture_default_str();
  construct->add_option("--v", o.v, "ambient dimension");
  construct->add_option("--k", o.k, "member dimension");
  construct->add_option("--d", o.d, "minimum subspace distance");
  construct->add_option("--t", o.t, "t");
  construct->add_option("--a", o.a, "spread: ambient is a*t");
  construct->add_option("--s", o.s, "lift: added dimensions");
  construct->add_option("--file", o.file, "lift/concat: first input set");
  construct->add_option("--file2", o.file2, "concat: second input set");

  auto* verify = app.add_subcommand("verify", "check the t-partition property of a file");
  verify->add_option("--file", o.file, "partition JSON")->required();
  verify->add_option("--t", o.t, "t (default: from the file)");

  auto* spectrum_cmd = app.add_subcommand("spectrum", "hyperplane spectrum of a set of t-subspaces");
  spectrum_cmd->add_option("--file", o.file, "set JSON")->required();
  spectrum_cmd->add_flag("--pairs", o.pairs, "also compute the pair-span profile");
  spectrum_cmd->add_flag("--holes", o.holes, "use only the t-dimensional members");

  auto* bound = app.add_subcommand("bound", "bound calculators");
  bound->require_subcommand(1);
  auto add_bound = [&](const char* name, const char* help) {
    auto* b = bound->add_subcommand(name, help);
    b->add_option("--q", o.q, "field order")->capture_default_str();
    return b;
  };
  auto* b_min = add_bound("min-card", "smallest size of a non-empty q^r-divisible set of t-subspaces");
  b_min->add_option("--t", o.t)->required();
  b_min->add_option("--r", o.r)->required();
  auto* b_tail = add_bound("tail", "size bound for q^r-divisible sets of k-subspaces");
  b_tail->add_option("--k", o.k)->required();
  b_tail->add_option("--r", o.r)->required();
  b_tail->add_flag("--divisible", o.divisible, "the case q^r | n");
  auto* b_exc = add_bound("exclusion", "is n excluded as the size of a q^r-divisible point set");
  b_exc->add_option("--r", o.r)->required();
  b_exc->add_option("--n", o.n)->required();
  auto* b_m3 = add_bound("m3", "upper bound on m3 for type 4^m4 3^m3 2^* in F_2^7");
  b_m3->add_option("--m4", o.m4)->required();
  auto* b_mrd = add_bound("mrd-like", "k-subspaces avoiding a (v-k)-subspace, pairwise meeting in <= a point");
  b_mrd->add_option("--v", o.v)->required();
  b_mrd->add_option("--k", o.k)->required();
  auto* b_fix = add_bound("fixture", "literature value of A_q(v,d;k)");
  b_fix->add_option("--v", o.v)->required();
  b_fix->add_option("--d", o.d)->required();
  b_fix->add_option("--k", o.k)->required();

  auto* lp = app.add_subcommand("lp", "plane ILP models: export and exact solving");
  lp->add_flag("--empty", o.empty, "no solids (S empty)");
  lp->add_option("--from-partition", o.from_partition, "take the solids of a 2-partition of F_2^7");
  lp->add_option("--q", o.q)->capture_default_str();
  lp->add_option("--v", o.v, "ambient dimension for --empty (default 7)");
  lp->add_option("--export", o.export_path, "write the model in LP format");
  lp->add_option("--solve", o.solve, "small (branch-and-bound) or relaxation");
  lp->add_option("--node-budget", o.node_budget)->capture_default_str();
  lp->add_flag("--force-budget", o.force_budget, "allow solving the F_2^7 model");
  lp->add_option("--time-limit", o.time_limit, "seconds for the exact solver");

  Output out;
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream os, es;
    const int rc = app.exit(e, os, es);
    out.text = os.str();
    std::cerr << es.str();
    out.code = rc == 0 ? kOk : kUsage;
    return out;
  }

  if (const char* env = std::getenv("QVSP_BUDGET"); env && !o.budget) {
    try {
      qvsp::set_enumeration_budget(std::stoull(env));
    } catch (const std::exception&) {
      std::cerr << "error: QVSP_BUDGET is not a number\n";
      out.code = kUsage;
      return out;
    }
  }
  if (o.budget) qvsp::set_enumeration_budget(*o.budget);

  const auto start = std::chrono::steady_clock::now();
  std::string command;
  CLI::App* leaf = nullptr;
  try {
    Json result;
    int code = kOk;
    if (!o.replay.empty()) {
      if (!app.get_subcommands().empty()) throw qvsp::DomainError("--replay takes no subcommand");
      command = "replay";
      result = cmd_replay(o.replay, code);
    } else if (app.get_subcommands().empty()) {
      out.text = app.help();
      out.code = kUsage;
      return out;
    } else {
      leaf = app.get_subcommands().front();
      command = leaf->get_name();
      if (leaf == construct) {
        Output c = cmd_construct(o);
        if (!o.out.empty()) {
          write_atomically(o.out, c.text);
          c.text.clear();
        }
        return c;
      }
      if (leaf == verify) {
        result = cmd_verify(o, code);
      } else if (leaf == spectrum_cmd) {
        result = cmd_spectrum(o);
      } else if (leaf == bound) {
        CLI::App* which = bound->get_subcommands().front();
        command += " " + which->get_name();
        leaf = which;
        result = cmd_bound(which->get_name(), o);
      } else if (leaf == lp) {
        result = cmd_lp(o, code);
      }
    }
    Json report;
    report["command"] = command;
    Json params = leaf ? given_parameters(leaf) : Json{{"file", o.replay}};
    if (o.budget) params["budget"] = *o.budget;
    report["parameters"] = params;
    report["result"] = result;
    report["elapsed_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    report["version"] = qvsp::kVersion;
    out.code = code;
    out.report = report;
    out.text = report.dump(2) + "\n";
    if (!o.out.empty()) {
      write_atomically(o.out, out.text);
      out.text.clear();
    }
  } catch (const qvsp::BudgetExceeded& e) {
    std::cerr << "budget: " << e.what() << '\n';
    out.code = kBudget;
  } catch (const qvsp::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    out.code = kUsage;
  } catch (const qvsp::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    out.code = kUsage;
  } catch (const qvsp::ValidationError& e) {
    std::cerr << "invalid: " << e.what() << '\n';
    out.code = kInvalid;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const Output out = execute(args);
    std::cout << out.text;
    return out.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
