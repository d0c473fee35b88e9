#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "prl/checkpoint.hpp"
#include "prl/practicals.hpp"
#include "prl/report.hpp"
#include "prl/search.hpp"
#include "prl/sfunction.hpp"
#include "prl/verify.hpp"

namespace {

using prl::OutputFormat;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitComputation = 1;
constexpr int kExitUsage = 2;

struct CliConfig {
  int64_t global_bound = int64_t{1} << 31;
  int64_t segment_length = int64_t{1} << 18;
  int threads = int(std::max(1u, std::thread::hardware_concurrency()));
  std::string checkpoint_path;
  int64_t checkpoint_stride = 10'000'000;
  bool trust_checkpoint = false;
  std::string format_name = "text";
  std::string tier_name = "quick";

  OutputFormat format{OutputFormat::text};
  prl::Tier tier{prl::Tier::quick};

  void validate() {
    if (threads < 1) throw prl::ConfigError("--threads must be >= 1");
    if (global_bound < 10'000) {
      throw prl::ConfigError("--bound must be >= 10000");
    }
    bool pow2 = (segment_length & (segment_length - 1)) == 0;
    if (!pow2 || segment_length < (1 << 10) || segment_length > (1 << 24)) {
      throw prl::ConfigError(
          "--segment-length must be a power of two in [2^10, 2^24]");
    }
    if (checkpoint_stride < 1) {
      throw prl::ConfigError("--checkpoint-stride must be >= 1");
    }
    auto fmt = prl::format_from_string(format_name);
    if (!fmt) throw prl::ConfigError("--format must be text|csv|json");
    format = *fmt;
    auto t = prl::tier_from_string(tier_name);
    if (!t) throw prl::ConfigError("--tier must be quick|standard|extended");
    tier = *t;
  }

  prl::SieveConfig sieve_config() const {
    return prl::SieveConfig{global_bound, segment_length, threads};
  }
};

void emit_value(const CliConfig& cfg, const ordered_json& record,
                const std::string& text_value) {
  switch (cfg.format) {
    case OutputFormat::text:
      std::cout << text_value << "\n";
      break;
    case OutputFormat::json:
      std::cout << record.dump() << "\n";
      break;
    case OutputFormat::csv: {
      std::string header, row;
      for (auto it = record.begin(); it != record.end(); ++it) {
        if (!header.empty()) {
          header += ',';
          row += ',';
        }
        header += it.key();
        const auto& v = it.value();
        row += v.is_string() ? v.get<std::string>() : v.dump();
      }
      std::cout << header << "\n" << row << "\n";
      break;
    }
  }
}

ordered_json outcome_to_json(const prl::SearchOutcome& outcome) {
  ordered_json params;
  params["m"] = outcome.spec.m;
  if (outcome.spec.a.has_value()) params["a"] = *outcome.spec.a;
  ordered_json record;
  record["predicate"] = std::string(prl::to_string(outcome.spec.id));
  record["params"] = std::move(params);
  if (outcome.witness_n.has_value()) {
    record["witness"] = *outcome.witness_n;
  } else {
    record["witness"] = nullptr;
  }
  record["lhs"] = outcome.left_value;
  record["rhs"] = outcome.right_value;
  record["scanned_up_to"] = outcome.scanned_up_to;
  record["elapsed_ms"] = outcome.elapsed_ms;
  if (!outcome.note.empty()) record["note"] = outcome.note;
  return record;
}

int emit_outcome(const CliConfig& cfg, const prl::SearchOutcome& outcome) {
  std::string text = outcome.witness_n.has_value()
                         ? std::to_string(*outcome.witness_n)
                         : "none (scanned up to " +
                               std::to_string(outcome.scanned_up_to) +
                               (outcome.note.empty() ? ")" : "; " +
                                outcome.note + ")");
  emit_value(cfg, outcome_to_json(outcome), text);
  return kExitOk;
}

int run_pi(const CliConfig& cfg, int64_t x) {
  prl::Sieve sieve(cfg.sieve_config());
  if (cfg.checkpoint_path.empty()) {
    int64_t value = sieve.pi(x);
    emit_value(cfg, {{"x", x}, {"pi", value}}, std::to_string(value));
    return kExitOk;
  }

  std::filesystem::path path(cfg.checkpoint_path);
  std::vector<prl::PiCheckpoint> rows;
  if (std::filesystem::exists(path)) {
    rows = prl::load_checkpoints(path);
    if (!cfg.trust_checkpoint) prl::verify_last_checkpoint(sieve, rows);
  }
  prl::PiCheckpoint from{1, 0, cfg.checkpoint_stride};
  std::vector<prl::PiCheckpoint> kept_below, kept_above;
  for (const prl::PiCheckpoint& cp : rows) {
    if (cp.n <= x) {
      kept_below.push_back(cp);
      from = cp;
      from.stride = cfg.checkpoint_stride;
    } else {
      kept_above.push_back(cp);
    }
  }
  std::vector<prl::PiCheckpoint> fresh;
  prl::ScanOptions opts;
  opts.limit = x;
  opts.on_checkpoint = [&](const prl::PiCheckpoint& cp) {
    fresh.push_back(cp);
    std::cerr << "progress: n=" << cp.n << " pi=" << cp.pi_n << "\n";
  };
  prl::PiCheckpoint final =
      sieve.scan_pi(from, [](int64_t, int64_t) { return true; }, opts);

  std::vector<prl::PiCheckpoint> merged;
  if (kept_below.empty()) merged.push_back({1, 0, cfg.checkpoint_stride});
  merged.insert(merged.end(), kept_below.begin(), kept_below.end());
  merged.insert(merged.end(), fresh.begin(), fresh.end());
  merged.insert(merged.end(), kept_above.begin(), kept_above.end());
  prl::write_checkpoints(path, merged);

  emit_value(cfg, {{"x", x}, {"pi", final.pi_n}}, std::to_string(final.pi_n));
  return kExitOk;
}

int run_nth_prime(const CliConfig& cfg, int64_t k) {
  prl::Sieve sieve(cfg.sieve_config());
  int64_t p = sieve.nth_prime(k);
  emit_value(cfg, {{"k", k}, {"p", p}}, std::to_string(p));
  return kExitOk;
}

int run_s(const CliConfig& cfg, int64_t m, bool full_cutoff) {
  prl::Sieve sieve(cfg.sieve_config());
  prl::SFunctionResult s =
      prl::compute_S(sieve, m, {.early_termination = !full_cutoff});
  ordered_json record;
  record["m"] = s.m;
  record["s"] = s.s_value;
  record["argmax_ks"] = s.argmax_ks;
  record["cutoff_used"] = s.cutoff_used;
  record["early_terminated"] = s.early_terminated;
  emit_value(cfg, record, std::to_string(s.s_value));
  return kExitOk;
}

int run_t(const CliConfig& cfg, int64_t m) {
  prl::TFunctionResult t = prl::compute_T(m);
  ordered_json record;
  record["m"] = t.m;
  record["t"] = t.t_value;
  record["argmax_ks"] = t.argmax_ks;
  record["cutoff_used"] = t.cutoff_used;
  record["q_at_cutoff"] = t.q_at_cutoff;
  emit_value(cfg, record, std::to_string(t.t_value));
  return kExitOk;
}

int run_search(const CliConfig& cfg, const std::string& predicate,
               int64_t m, std::optional<int64_t> a,
               const std::string& variant, int64_t n_limit) {
  prl::Sieve sieve(cfg.sieve_config());
  prl::PredicateSpec spec;
  spec.m = m;
  spec.n_limit = n_limit;
  auto need_variant = [&](const char* base) {
    std::string full = std::string(base) + "_" +
                       (variant == "of-sum" ? "of_sum" : variant);
    auto id = prl::predicate_from_string(full);
    if (!id) {
      throw prl::ConfigError("--variant must be n|sum|of-sum for " +
                             std::string(base) + " searches");
    }
    return *id;
  };
  if (predicate == "ratio") {
    if (!a.has_value()) {
      throw prl::ConfigError("search ratio requires --a");
    }
    spec.id = prl::PredicateId::ratio;
    spec.a = a;
  } else if (predicate == "s") {
    spec.id = prl::PredicateId::mn_eq_m_plus_n;
  } else if (predicate == "f") {
    spec.id = prl::PredicateId::mn_eq_fib;
  } else if (predicate == "phi") {
    spec.id = need_variant("phi");
  } else if (predicate == "tau") {
    spec.id = need_variant("tau");
  } else if (predicate == "divides") {
    spec.id = prl::PredicateId::divides_pm_pn;
  } else if (predicate == "pi-divides") {
    spec.id = prl::PredicateId::pi_divides_pm_pn;
  } else if (auto id = prl::predicate_from_string(predicate)) {
    spec.id = *id;
    spec.a = a;
  } else {
    throw prl::ConfigError("unknown predicate '" + predicate + "'");
  }
  return emit_outcome(cfg, prl::run_predicate(sieve, spec));
}

int run_reproduce(const CliConfig& cfg, const std::vector<std::string>& tables) {
  prl::ReproduceOptions options;
  options.tier = cfg.tier;
  options.tables = tables;
  options.sieve = cfg.sieve_config();
  options.threads = cfg.threads;
  prl::ReproductionReport report = prl::run_reproduction(options);
  std::cout << prl::emit(report, cfg.format);
  return report.failed == 0 ? kExitOk : kExitComputation;
}

int emit_suite(const CliConfig& cfg, const prl::SuiteResult& result) {
  switch (cfg.format) {
    case OutputFormat::text:
      for (const prl::SuiteCheck& c : result.checks) {
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail
                  << "\n";
      }
      std::cout << "suite " << result.suite << ": "
                << (result.pass() ? "pass" : "fail") << "\n";
      break;
    case OutputFormat::json: {
      ordered_json doc;
      doc["suite"] = result.suite;
      doc["checks"] = ordered_json::array();
      for (const prl::SuiteCheck& c : result.checks) {
        doc["checks"].push_back(
            {{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
      }
      doc["pass"] = result.pass();
      std::cout << doc.dump() << "\n";
      break;
    }
    case OutputFormat::csv:
      std::cout << "name,pass,detail\n";
      for (const prl::SuiteCheck& c : result.checks) {
        std::cout << '"' << c.name << "\"," << (c.pass ? "true" : "false")
                  << ",\"" << c.detail << "\"\n";
      }
      break;
  }
  return result.pass() ? kExitOk : kExitComputation;
}

int run_verify(const CliConfig& cfg, const std::string& suite,
               int64_t m_max, int64_t n_max, int64_t k_max) {
  prl::Sieve sieve(cfg.sieve_config());
  if (suite == "dusart") {
    return emit_suite(cfg,
                      prl::verify_dusart_suite(sieve, k_max > 0 ? k_max
                                                                : 1'000'000));
  }
  if (suite == "remarks") {
    return emit_suite(
        cfg, prl::verify_remarks_suite(sieve, m_max > 0 ? m_max : 10'000,
                                       n_max > 0 ? n_max : 100'000));
  }
  if (suite == "growth") {
    return emit_suite(cfg,
                      prl::verify_growth_suite(sieve, m_max > 0 ? m_max : 17));
  }
  if (suite == "interval-cover") {
    return emit_suite(cfg, prl::verify_interval_cover_suite(
                               sieve, m_max > 0 ? m_max : 4, -25));
  }
  if (suite == "practical-oracle") {
    return emit_suite(cfg, prl::verify_practical_oracle_suite(
                               n_max > 0 ? n_max : 5'000, 10'000));
  }
  if (suite == "conj41") {
    return emit_suite(cfg,
                      prl::verify_conj41_suite(sieve, m_max > 0 ? m_max : 12));
  }
  if (suite == "conj44") {
    return emit_suite(cfg,
                      prl::verify_conj44_suite(sieve, m_max > 0 ? m_max : 2'000));
  }
  throw prl::ConfigError(
      "unknown suite '" + suite +
      "' (dusart, remarks, growth, interval-cover, practical-oracle, "
      "conj41, conj44)");
}

int run_practical(const CliConfig& cfg, const std::string& what, int64_t arg) {
  if (what == "count") {
    int64_t count = prl::practical_count(arg);
    emit_value(cfg, {{"x", arg}, {"count", count}}, std::to_string(count));
    return kExitOk;
  }
  if (what == "kth") {
    int64_t q = prl::kth_practical(arg);
    emit_value(cfg, {{"k", arg}, {"q", q}}, std::to_string(q));
    return kExitOk;
  }
  throw prl::ConfigError("practical subcommand must be count or kth");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prime-counting ratio toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  CliConfig cfg;
  app.add_option("--bound", cfg.global_bound, "global sieve bound")
      ->envname("PRL_BOUND");
  app.add_option("--segment-length", cfg.segment_length,
                 "sieve segment length (numbers)")
      ->envname("PRL_SEGMENT_LENGTH");
  app.add_option("--threads", cfg.threads, "worker threads")
      ->envname("PRL_THREADS");
  app.add_option("--checkpoint", cfg.checkpoint_path,
                 "checkpoint CSV path for resumable scans")
      ->envname("PRL_CHECKPOINT");
  app.add_option("--checkpoint-stride", cfg.checkpoint_stride,
                 "spacing between persisted (n, pi) anchors")
      ->envname("PRL_CHECKPOINT_STRIDE");
  app.add_flag("--trust-checkpoint", cfg.trust_checkpoint,
               "skip checkpoint re-verification on load")
      ->envname("PRL_TRUST_CHECKPOINT");
  app.add_option("--format", cfg.format_name, "output format: text|csv|json")
      ->envname("PRL_FORMAT");
  app.add_option("--tier", cfg.tier_name,
                 "reproduction tier: quick|standard|extended")
      ->envname("PRL_TIER");

  int64_t x = 0, k = 0, m = 0, n_limit = 0;
  int64_t m_max = 0, n_max = 0, k_max = 0;
  bool full_cutoff = false;
  std::string predicate, variant = "n", suite, practical_what;
  std::optional<int64_t> ratio_a;
  std::vector<std::string> tables;

  CLI::App* cmd_pi = app.add_subcommand("pi", "exact prime count pi(x)");
  cmd_pi->add_option("x", x, "argument")->required()->check(CLI::NonNegativeNumber);

  CLI::App* cmd_np = app.add_subcommand("nth-prime", "the k-th prime");
  cmd_np->add_option("k", k, "index (1-based)")->required()->check(CLI::PositiveNumber);

  CLI::App* cmd_s = app.add_subcommand("s", "S(m) = max(k*m - p_k)");
  cmd_s->add_option("m", m, "parameter m")->required()->check(CLI::PositiveNumber);
  cmd_s->add_flag("--full-cutoff", full_cutoff,
                  "scan the full floor(e^{m+1}) range, no early termination");

  CLI::App* cmd_t = app.add_subcommand("t", "T(m) = max(k*m - q_k)");
  cmd_t->add_option("m", m, "parameter m")->required()->check(CLI::PositiveNumber);

  CLI::App* cmd_search = app.add_subcommand("search", "least-witness search");
  cmd_search->add_option("predicate", predicate,
                         "ratio|s|f|phi|tau|divides|pi-divides")
      ->required();
  cmd_search->add_option("--m", m, "parameter m")->required()
      ->check(CLI::PositiveNumber);
  cmd_search->add_option("--a", ratio_a, "ratio offset a");
  cmd_search->add_option("--variant", variant, "n|sum|of-sum");
  cmd_search->add_option("--n-limit", n_limit, "scan ceiling for n");

  CLI::App* cmd_rep = app.add_subcommand("reproduce",
                                         "diff computed values against the "
                                         "embedded reference tables");
  cmd_rep->add_option("--table", tables, "restrict to table ids (repeatable)");

  CLI::App* cmd_verify = app.add_subcommand("verify", "verification suites");
  cmd_verify->add_option("suite", suite,
                         "dusart|remarks|growth|interval-cover|"
                         "practical-oracle|conj41|conj44")
      ->required();
  cmd_verify->add_option("--m-max", m_max, "suite-specific m ceiling");
  cmd_verify->add_option("--n-max", n_max, "suite-specific n ceiling");
  cmd_verify->add_option("--k-max", k_max, "suite-specific k ceiling");

  CLI::App* cmd_prac = app.add_subcommand("practical", "practical numbers");
  cmd_prac->add_option("what", practical_what, "count|kth")->required();
  cmd_prac->add_option("arg", x, "argument")->required()
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    cfg.validate();
    if (cmd_pi->parsed()) return run_pi(cfg, x);
    if (cmd_np->parsed()) return run_nth_prime(cfg, k);
    if (cmd_s->parsed()) return run_s(cfg, m, full_cutoff);
    if (cmd_t->parsed()) return run_t(cfg, m);
    if (cmd_search->parsed()) {
      return run_search(cfg, predicate, m, ratio_a, variant, n_limit);
    }
    if (cmd_rep->parsed()) return run_reproduce(cfg, tables);
    if (cmd_verify->parsed()) return run_verify(cfg, suite, m_max, n_max, k_max);
    if (cmd_prac->parsed()) return run_practical(cfg, practical_what, x);
    std::cerr << "no subcommand\n";
    return kExitUsage;
  } catch (const prl::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitComputation;
  }
}
