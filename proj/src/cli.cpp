#include "tdsharp/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "tdsharp/generators.hpp"

namespace tdsharp {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string join_sizes(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::string join_scalars(const Field& f, const std::vector<Scalar>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + f.to_string(v[i]);
  return s + ")";
}

std::string summarize_record(const TDSystemRecord& r) {
  return "d=" + std::to_string(r.d) + " n=" + std::to_string(r.n()) + " shape " + join_sizes(r.shape) +
         " sharp=" + (r.sharp ? "true" : "false") + " theta " + join_scalars(r.field, r.theta) + " theta* " +
         join_scalars(r.field, r.theta_star);
}

MatrixPair pair_of(const Instance& i) { return {i.A, i.Astar}; }

Field finite_field(std::int64_t p, std::size_t k) {
  const Field base = Field::prime(p);
  return k == 1 ? base : Field::extension(base, k);
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

std::int64_t parse_int(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError("cannot parse " + what + " '" + text + "'");
  }
}

}  // namespace

Json ReportEnvelope::to_json() const {
  Json out;
  out["command"] = command;
  out["digest"] = digest;
  out["outcome"] = to_string(outcome);
  out["payload"] = payload;
  out["wall_time_ms"] = wall_time_ms;
  out["seed"] = seed;
  return out;
}

ReportEnvelope verify_instance(const Instance& instance, const VerifyOptions& options) {
  const auto start = Clock::now();
  ReportEnvelope env;
  env.command = "verify";
  env.digest = instance_digest(instance);
  env.seed = options.seed;
  VerificationResult r = verify_td_system(instance.A, instance.Astar, options);
  if (r.accepted()) {
    env.outcome = Outcome::accepted;
    env.payload = record_to_json(*r.record);
    env.payload["orderings"] = {{"A", r.orderings_A}, {"Astar", r.orderings_Astar}};
  } else {
    env.outcome = r.failure->tag == FailureTag::inconclusive ? Outcome::inconclusive : Outcome::rejected;
    env.payload = failure_to_json(*r.failure);
  }
  env.wall_time_ms = elapsed_ms(start);
  return env;
}

ReportEnvelope sharpen_instance(const Instance& instance, const SharpenOptions& options) {
  const auto start = Clock::now();
  ReportEnvelope env;
  env.command = "sharpen";
  env.digest = instance_digest(instance);
  env.seed = options.seed;
  SharpenResult r = sharpen_pipeline(instance.A, instance.Astar, options);
  env.outcome = r.outcome;
  if (r.certificate)
    env.payload = certificate_to_json(*r.certificate);
  else
    env.payload = failure_to_json(*r.verification.failure);
  env.wall_time_ms = elapsed_ms(start);
  return env;
}

ReportEnvelope oracle_subspaces(const Instance& instance, std::uint64_t seed, std::size_t budget) {
  const auto start = Clock::now();
  ReportEnvelope env;
  env.command = "oracle subspaces";
  env.digest = instance_digest(instance);
  env.seed = seed;
  const std::vector<ExactMatrix> gens{instance.A, instance.Astar};
  const std::size_t n = instance.A.rows();
  const auto subs = bruteforce_invariant_subspaces(gens, n);
  Rng rng(seed);
  const IrreducibilityResult fast = norton_irreducible(gens, n, rng, budget);

  bool witness_ok = true;
  if (fast.witness) {
    const ExactMatrix& w = *fast.witness;
    for (const auto& g : gens) witness_ok = witness_ok && rank(hstack(w, g * w)) == w.cols();
    witness_ok = witness_ok && w.cols() > 0 && w.cols() < n;
  }
  const bool agree = fast.verdict != Verdict::inconclusive && (fast.verdict == Verdict::yes) == subs.empty();
  env.payload["invariant_subspaces"] = subs.size();
  Json listed = Json::array();
  for (const auto& s : subs) listed.push_back(matrix_to_json(s.transpose()));
  env.payload["subspaces"] = listed;
  env.payload["norton"] = fast.verdict == Verdict::yes ? "irreducible" : fast.verdict == Verdict::no ? "reducible" : "inconclusive";
  if (fast.witness) {
    env.payload["norton_witness"] = matrix_to_json(fast.witness->transpose());
    env.payload["norton_witness_invariant"] = witness_ok;
  }
  env.payload["agree"] = agree && witness_ok;
  if (fast.verdict == Verdict::inconclusive)
    env.outcome = Outcome::inconclusive;
  else if (!agree || !witness_ok)
    env.outcome = Outcome::corrupted;
  else
    env.outcome = subs.empty() ? Outcome::accepted : Outcome::rejected;
  env.wall_time_ms = elapsed_ms(start);
  return env;
}

std::size_t trial_budget_from_env(std::size_t fallback) {
  const char* raw = std::getenv("TD_TRIAL_BUDGET");
  if (!raw || !*raw) return fallback;
  const std::int64_t v = parse_int(raw, "TD_TRIAL_BUDGET");
  if (v <= 0) throw ParseError("TD_TRIAL_BUDGET must be positive");
  return static_cast<std::size_t>(v);
}

namespace {

std::string summary(const ReportEnvelope& env, const std::string& label) {
  std::string s = label + ": " + to_string(env.outcome);
  const Json& p = env.payload;
  if (env.command == "verify") {
    if (env.outcome == Outcome::accepted) {
      s += " d=" + std::to_string(p["d"].get<std::size_t>()) + " n=" + std::to_string(p["n"].get<std::size_t>()) +
           " shape " + join_sizes(p["shape"].get<std::vector<std::size_t>>()) +
           " sharp=" + (p["sharp"].get<bool>() ? "true" : "false");
    } else {
      s += " [" + p["tag"].get<std::string>() + "] " + p["detail"].get<std::string>();
    }
  } else if (env.command == "sharpen") {
    if (p.contains("lemma_passes")) {
      s += " T_dim=" + std::to_string(p["T_dim"].get<std::size_t>()) + " rho=" + std::to_string(p["rho"].get<std::size_t>());
      if (p.contains("failed")) s += " failed=" + p["failed"].get<std::string>();
      if (!p["sharpened"].is_null()) {
        const Json& r = p["sharpened"];
        s += " rebased n=" + std::to_string(r["n"].get<std::size_t>()) + " shape " +
             join_sizes(r["shape"].get<std::vector<std::size_t>>()) + " sharp=" + (r["sharp"].get<bool>() ? "true" : "false");
      }
      std::string passed;
      for (const auto& [name, ok] : p["lemma_passes"].items()) passed += " " + name + (ok.get<bool>() ? "=pass" : "=FAIL");
      s += "\n  checks:" + passed;
    } else {
      s += " [" + p["tag"].get<std::string>() + "] " + p["detail"].get<std::string>();
    }
  } else {
    const std::size_t count = p["invariant_subspaces"].get<std::size_t>();
    s += count == 0 ? " no proper invariant subspace"
                    : " " + std::to_string(count) + " proper invariant subspace" + (count == 1 ? "" : "s");
    s += std::string("; ") + (p["agree"].get<bool>() ? "agrees with" : "DISAGREES with") + " Norton";
  }
  return s;
}

void emit_report(const Json& report, const std::string& json_out, std::ostream& out) {
  if (json_out.empty()) return;
  if (json_out == "-")
    out << pretty_json(report);
  else
    write_file_atomic(json_out, pretty_json(report));
}

int batch_verify(const std::filesystem::path& dir, const VerifyOptions& options, const std::string& json_out,
                 std::ostream& out) {
  if (!std::filesystem::is_directory(dir)) throw ParseError(dir.string() + " is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  struct Slot {
    std::optional<ReportEnvelope> env;
    std::string error;
    int code = 0;
  };
  std::vector<Slot> slots(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      try {
        slots[i].env = verify_instance(load_instance(files[i]), options);
        slots[i].code = exit_code(slots[i].env->outcome);
      } catch (const InternalError& e) {
        slots[i].error = e.what();
        slots[i].code = 3;
      } catch (const std::exception& e) {
        slots[i].error = e.what();
        slots[i].code = 1;
      }
    }
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(files.size(), std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  Json reports = Json::array();
  int worst = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const std::string name = files[i].filename().string();
    if (slots[i].env) {
      out << summary(*slots[i].env, name) << "\n";
      Json j = slots[i].env->to_json();
      j["file"] = name;
      reports.push_back(j);
    } else {
      out << name << ": error " << slots[i].error << "\n";
      reports.push_back({{"file", name}, {"error", slots[i].error}});
    }
    worst = std::max(worst, slots[i].code);
  }
  out << files.size() << " files\n";
  emit_report({{"command", "verify --batch"}, {"reports", reports}}, json_out, out);
  return worst;
}

void write_instance(const Instance& instance, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-")
    out << emit_instance(instance);
  else
    write_file_atomic(path, emit_instance(instance));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification and sharpening of tridiagonal pairs", "tdsharp"};
  app.require_subcommand(1);

  std::string file, json_out, out_path, shape_name = "leonard", params;
  bool batch = false, base_eigenvalues = false;
  std::uint64_t seed = 0;
  std::int64_t p = 0;
  std::size_t k = 1, d = 1;

  auto* verify = app.add_subcommand("verify", "Decide whether (A, A*) is a tridiagonal pair");
  verify->add_option("file", file, "Instance file, or a directory with --batch")->required();
  verify->add_flag("--batch", batch, "Verify every .json file in the directory");
  verify->add_option("--json", json_out, "Write the report envelope as JSON ('-' for stdout)");
  verify->add_option("--seed", seed, "Seed for the randomized irreducibility test");

  auto* sharpen = app.add_subcommand("sharpen", "Certify the structure lemmas and rebase over the center");
  sharpen->add_option("file", file, "Instance file")->required();
  sharpen->add_option("--json", json_out, "Write the certificate envelope as JSON ('-' for stdout)");
  sharpen->add_option("--seed", seed, "Seed for witness sampling and randomized tests");

  auto* generate = app.add_subcommand("generate", "Write seeded instance files");
  generate->require_subcommand(1);
  auto* gsplit = generate->add_subcommand("split", "Split-form pair over GF(p^k), retried until it verifies");
  gsplit->add_option("--p", p, "Characteristic")->required();
  gsplit->add_option("--k", k, "Extension degree");
  gsplit->add_option("--d", d, "Diameter")->required();
  gsplit->add_option("--seed", seed, "Generator seed")->required();
  gsplit->add_option("--shape", shape_name, "leonard (all ones) or binomial (tensor product)");
  gsplit->add_flag("--base-eigenvalues", base_eigenvalues, "Draw eigenvalues from the prime subfield");
  gsplit->add_option("--out", out_path, "Output file (stdout by default)");
  auto* gtwisted = generate->add_subcommand("twisted", "4x4 nonsharp pair over GF(p) from a diameter-1 seed over GF(p^2)");
  gtwisted->add_option("--p", p, "Characteristic")->required();
  gtwisted->add_option("--params", params, "theta0,theta1,theta*0,theta*1,gamma (gamma like 1+i)")->required();
  gtwisted->add_option("--out", out_path, "Output file (stdout by default)");
  auto* grestrict = generate->add_subcommand("restrict", "Restrict scalars of an instance, or draw a restriction instance");
  grestrict->add_option("file", file, "Instance over GF(p^k) to restrict");
  grestrict->add_option("--p", p, "Characteristic (when drawing)");
  grestrict->add_option("--k", k, "Extension degree (when drawing)");
  grestrict->add_option("--d", d, "Seed diameter (when drawing)");
  grestrict->add_option("--seed", seed, "Generator seed (when drawing)");
  grestrict->add_option("--shape", shape_name, "leonard or binomial seed shape");
  grestrict->add_option("--out", out_path, "Output file (stdout by default)");

  auto* oracle = app.add_subcommand("oracle", "Exhaustive oracles for small instances");
  oracle->require_subcommand(1);
  auto* osubspaces = oracle->add_subcommand("subspaces", "Enumerate invariant subspaces (p^k <= 4, n <= 4)");
  osubspaces->add_option("file", file, "Instance file")->required();
  osubspaces->add_option("--json", json_out, "Write the report envelope as JSON ('-' for stdout)");
  osubspaces->add_option("--seed", seed, "Seed for the randomized test");

  std::vector<std::string> argv_store{"tdsharp"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    const std::size_t budget = trial_budget_from_env();
    if (verify->parsed()) {
      const VerifyOptions options{seed, budget};
      if (batch) return batch_verify(file, options, json_out, out);
      const ReportEnvelope env = verify_instance(load_instance(file), options);
      out << summary(env, file) << "\n";
      emit_report(env.to_json(), json_out, out);
      return exit_code(env.outcome);
    }
    if (sharpen->parsed()) {
      const ReportEnvelope env = sharpen_instance(load_instance(file), {seed, budget, 10});
      out << summary(env, file) << "\n";
      emit_report(env.to_json(), json_out, out);
      return exit_code(env.outcome);
    }
    if (osubspaces->parsed()) {
      const ReportEnvelope env = oracle_subspaces(load_instance(file), seed, budget);
      out << summary(env, file) << "\n";
      emit_report(env.to_json(), json_out, out);
      return exit_code(env.outcome);
    }

    std::ostream& note = out_path.empty() || out_path == "-" ? err : out;
    const VerifyOptions vopts{seed, budget};
    if (gsplit->parsed()) {
      const Field f = finite_field(p, k);
      const SplitShape shape = split_shape_from_string(shape_name);
      GeneratedInstance g = generate_split(f, {d, base_eigenvalues}, shape, seed, vopts);
      Instance inst{f, g.pair.A, g.pair.Astar, Json::object()};
      inst.provenance = {{"generator", "split"},
                         {"params", {{"p", p}, {"k", k}, {"d", d}, {"shape", shape_name}, {"base_eigenvalues", base_eigenvalues}}},
                         {"seed", seed},
                         {"attempts", g.attempts}};
      write_instance(inst, out_path, out);
      note << "generated split instance: " << summarize_record(g.record) << "\n";
      return 0;
    }
    if (gtwisted->parsed()) {
      const auto parts = split_commas(params);
      if (parts.size() != 5) throw ParseError("--params needs theta0,theta1,theta*0,theta*1,gamma");
      TwistedParams tp;
      tp.p = p;
      tp.theta0 = parse_int(parts[0], "theta0");
      tp.theta1 = parse_int(parts[1], "theta1");
      tp.theta_star0 = parse_int(parts[2], "theta*0");
      tp.theta_star1 = parse_int(parts[3], "theta*1");
      tp.gamma = parse_scalar_expression(Field::extension(Field::prime(p), 2), parts[4]);
      const MatrixPair pair = twisted_diameter1_nonsharp(tp);
      Instance inst{pair.A.field(), pair.A, pair.Astar, Json::object()};
      inst.provenance = {{"generator", "twisted"},
                         {"params",
                          {{"p", p},
                           {"theta", {tp.theta0, tp.theta1}},
                           {"theta_star", {tp.theta_star0, tp.theta_star1}},
                           {"gamma", parts[4]}}}};
      write_instance(inst, out_path, out);
      const VerificationResult r = verify_td_system(pair.A, pair.Astar, vopts);
      note << "generated twisted instance: "
           << (r.accepted() ? summarize_record(*r.record) : "does not verify: " + to_string(r.failure->tag)) << "\n";
      return r.accepted() ? 0 : 2;
    }
    if (grestrict->parsed()) {
      if (!file.empty()) {
        const Instance src = load_instance(file);
        const MatrixPair pair = restrict_scalars(pair_of(src));
        Instance inst{pair.A.field(), pair.A, pair.Astar, Json::object()};
        inst.provenance = {{"generator", "restrict"}, {"source_digest", instance_digest(src)}};
        if (!src.provenance.empty()) inst.provenance["source"] = src.provenance;
        write_instance(inst, out_path, out);
        const VerificationResult r = verify_td_system(pair.A, pair.Astar, vopts);
        note << "restricted instance: "
             << (r.accepted() ? summarize_record(*r.record) : "does not verify: " + to_string(r.failure->tag)) << "\n";
        return r.accepted() ? 0 : 2;
      }
      if (p == 0 || k < 2) throw ParseError("generate restrict needs a file or --p, --k >= 2, --d and --seed");
      const Field f = finite_field(p, k);
      GeneratedInstance g = generate_restriction(f, {d, true}, split_shape_from_string(shape_name), seed, vopts);
      Instance inst{g.record.field, g.pair.A, g.pair.Astar, Json::object()};
      inst.provenance = {{"generator", "restrict"},
                         {"params", {{"p", p}, {"k", k}, {"d", d}, {"shape", shape_name}}},
                         {"seed", seed},
                         {"attempts", g.attempts},
                         {"seed_shape", g.seed->shape}};
      write_instance(inst, out_path, out);
      note << "generated restriction instance: " << summarize_record(g.record) << "\n";
      return 0;
    }
  } catch (const InternalError& e) {
    err << "internal check failed: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace tdsharp
