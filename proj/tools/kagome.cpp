// kagome: command-line front end.
//
// Exit codes: 0 success, 1 domain error (JSON object on stderr), 2 usage error.

#include <CLI11.hpp>

#include <atomic>
#include <iostream>
#include <thread>

#include "kagome/cftp.hpp"
#include "kagome/exact.hpp"
#include "kagome/io.hpp"
#include "kagome/minimal.hpp"
#include "kagome/render.hpp"
#include "kagome/verify.hpp"

using namespace kagome;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int fail(const std::string& kind, const std::string& message) {
  Json err = {{"schema_version", kSchemaVersion}, {"error", kind}, {"message", message}};
  std::cerr << err.dump() << "\n";
  return 1;
}

ChainVariant variant_arg(const std::string& text) {
  try {
    return ChainVariant::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// "5..12", "5,8,11" or a mix such as "3,5..7".
std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  try {
    while (pos <= text.size()) {
      const auto comma = text.find(',', pos);
      const std::string part = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      const auto dots = part.find("..");
      if (dots == std::string::npos) {
        out.push_back(std::stoi(part));
      } else {
        const int lo = std::stoi(part.substr(0, dots)), hi = std::stoi(part.substr(dots + 2));
        if (lo > hi) throw UsageError("empty size range " + part);
        for (int n = lo; n <= hi; ++n) out.push_back(n);
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  } catch (const std::logic_error&) {
    throw UsageError("cannot parse sizes '" + text + "'");
  }
  return out;
}

std::optional<std::size_t> cap_arg(long long cap) {
  if (cap > 0) return static_cast<std::size_t>(cap);
  return node_cap_from_env();
}

unsigned thread_count(unsigned requested) {
  return requested ? requested : std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kagome lattice tilings: enumeration, exact chain analysis, perfect sampling and rendering"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "kagome 0.1.0");

  std::string region_arg, variant_text = "general", out_path, dot_path, in_path, style_path, csv_path = "bench.csv";
  std::string eps_text = "1/4", sizes_text = "5..12", family = "square";
  std::uint64_t seed = 0, budget = kDefaultStepBudget, ops = 1000000;
  long long cap = 0;
  int samples = 1, trials = 200;
  unsigned threads = 0;
  bool heights = false, flips = false, prototiles = false;

  auto* enumerate_cmd = app.add_subcommand("enumerate", "flip graph statistics as JSON");
  enumerate_cmd->add_option("--region", region_arg, "family:n, 'witness' or a region/tiling JSON file")->required();
  enumerate_cmd->add_option("--variant", variant_text, "general (all flips) or restrained");
  enumerate_cmd->add_option("--dot", dot_path, "also write the graph in DOT format");
  enumerate_cmd->add_option("--cap", cap, "node cap (default KAGOME_NODE_CAP or 200000)");

  auto* sample_cmd = app.add_subcommand("sample", "exact samples by coupling from the past, one tiling JSON per line");
  sample_cmd->add_option("--region", region_arg)->required();
  sample_cmd->add_option("--variant", variant_text, "general, restrained or weighted:<lambda>");
  sample_cmd->add_option("--seed", seed)->required();
  sample_cmd->add_option("--samples", samples)->check(CLI::PositiveNumber);
  sample_cmd->add_option("--budget", budget, "step budget per sample");
  sample_cmd->add_option("--threads", threads);
  sample_cmd->add_option("--out", out_path, "write to a file instead of stdout");

  auto* mix_cmd = app.add_subcommand("mix", "exact mixing time on a small region");
  mix_cmd->add_option("--region", region_arg)->required();
  mix_cmd->add_option("--variant", variant_text);
  mix_cmd->add_option("--eps", eps_text, "total variation threshold, e.g. 1/4");
  mix_cmd->add_option("--cap", cap, "node cap");

  auto* ledger_cmd = app.add_subcommand("ledger", "worst path-coupling entry as an exact rational");
  ledger_cmd->add_option("--region", region_arg)->required();
  ledger_cmd->add_option("--variant", variant_text, "general, restrained or weighted:<p/q>");
  ledger_cmd->add_option("--cap", cap, "node cap");

  auto* bench_cmd = app.add_subcommand("bench", "forward coupling times over region sizes");
  bench_cmd->add_option("--sizes", sizes_text, "e.g. 5..12 or 4,8,16");
  bench_cmd->add_option("--trials", trials);
  bench_cmd->add_option("--seed", seed)->required();
  bench_cmd->add_option("--variant", variant_text);
  bench_cmd->add_option("--family", family, "region family");
  bench_cmd->add_option("--budget", budget, "step budget per trial");
  bench_cmd->add_option("--threads", threads);
  bench_cmd->add_option("--csv", csv_path, "per-trial CSV output");

  auto* minimal_cmd = app.add_subcommand("minimal", "minimal restrained tiling of a lozenge by contour peeling");
  minimal_cmd->add_option("--region", region_arg)->required();

  auto* render_cmd = app.add_subcommand("render", "SVG rendering of a tiling");
  render_cmd->add_option("--in", in_path, "tiling JSON");
  render_cmd->add_option("--out", out_path)->required();
  render_cmd->add_option("--style", style_path, "style JSON");
  render_cmd->add_flag("--heights", heights, "label vertex heights");
  render_cmd->add_flag("--flips", flips, "mark flippable vertices");
  render_cmd->add_flag("--prototiles", prototiles, "draw the three prototiles instead of a tiling");

  auto* verify_cmd = app.add_subcommand("verify", "randomized invariant campaigns");
  verify_cmd->add_option("--ops", ops, "operations per property");
  verify_cmd->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*enumerate_cmd) {
      const auto v = variant_arg(variant_text);
      if (v.kind == ChainVariant::Kind::Weighted) throw UsageError("enumerate takes general or restrained");
      const auto g = enumerate(load_region_arg(region_arg),
                               v.kind == ChainVariant::Kind::Restrained ? FlipSet::Restrained : FlipSet::All, cap_arg(cap));
      if (!dot_path.empty()) write_text_file(dot_path, graph_to_dot(g));
      std::cout << graph_stats_json(g).dump() << "\n";
    } else if (*sample_cmd) {
      const auto s = make_sandwich(load_region_arg(region_arg), variant_arg(variant_text));
      std::vector<std::string> lines(samples);
      std::vector<std::string> errors(samples);
      std::atomic<int> next{0};
      auto worker = [&] {
        CftpOptions opt;
        opt.budget = budget;
        for (int i; (i = next.fetch_add(1)) < samples;) {
          try {
            lines[i] = tiling_to_json(cftp_sample(s, trial_seed(seed, 0, i), opt).sample).dump();
          } catch (const std::exception& e) {
            errors[i] = e.what();
          }
        }
      };
      std::vector<std::thread> pool;
      for (unsigned i = 1; i < thread_count(threads); ++i) pool.emplace_back(worker);
      worker();
      for (auto& t : pool) t.join();
      for (int i = 0; i < samples; ++i)
        if (!errors[i].empty()) return fail("sampling", "sample " + std::to_string(i) + ": " + errors[i]);
      std::string text;
      for (auto& l : lines) text += l + "\n";
      if (out_path.empty())
        std::cout << text;
      else
        write_text_file(out_path, text);
    } else if (*mix_cmd) {
      const auto v = variant_arg(variant_text);
      const mpq_class eps = parse_rational(eps_text);
      if (eps <= 0 || eps >= 1) throw UsageError("--eps must lie in (0, 1)");
      const auto g = enumerate(load_region_arg(region_arg),
                               v.kind == ChainVariant::Kind::Restrained ? FlipSet::Restrained : FlipSet::All, cap_arg(cap));
      const auto t = exact_mixing_time(g, v, eps.get_d(), cap > 0 ? static_cast<std::size_t>(cap) : kDefaultMixingCap);
      std::cout << Json{{"schema_version", kSchemaVersion},
                        {"family", g.region->family()},
                        {"n", g.region->size_param()},
                        {"variant", v.name()},
                        {"eps", rational_string(eps)},
                        {"nodes", g.size()},
                        {"mixing_time", t}}
                       .dump()
                << "\n";
    } else if (*ledger_cmd) {
      const auto v = variant_arg(variant_text);
      const auto g = enumerate(load_region_arg(region_arg),
                               v.kind == ChainVariant::Kind::Restrained ? FlipSet::Restrained : FlipSet::All, cap_arg(cap));
      std::cout << ledger_json(g, path_coupling_ledger(g, v), v).dump() << "\n";
    } else if (*bench_cmd) {
      BenchOptions opt;
      opt.family = family;
      opt.budget = budget;
      opt.threads = threads;
      const auto rep = benchmark_scaling(parse_sizes(sizes_text), trials, variant_arg(variant_text), seed, opt);
      write_text_file(csv_path, bench_csv(rep));
      Json sizes = Json::array();
      for (const auto& s : rep.sizes)
        sizes.push_back({{"n", s.n}, {"tiles", s.tiles}, {"mean", s.mean}, {"stderr", s.stderr_mean},
                         {"trials", s.trials}, {"flagged", s.flagged}});
      Json out = {{"schema_version", kSchemaVersion}, {"csv", csv_path}, {"sizes", sizes}, {"fitted", rep.fitted}};
      if (rep.fitted) {
        out["exponent"] = rep.exponent;
        out["prefactor"] = rep.prefactor;
      }
      std::cout << out.dump() << "\n";
    } else if (*minimal_cmd) {
      std::cout << tiling_to_json(contour_peel_minimal(load_region_arg(region_arg))).dump() << "\n";
    } else if (*render_cmd) {
      RenderStyle style = style_path.empty() ? default_style() : style_from_json(read_json_file(style_path));
      style.show_heights = style.show_heights || heights;
      style.show_flips = style.show_flips || flips;
      std::string svg;
      if (prototiles) {
        svg = to_svg(prototile_figure(), style);
      } else {
        if (in_path.empty()) throw UsageError("render needs --in or --prototiles");
        svg = render(tiling_from_json(read_json_file(in_path)), style);
      }
      write_text_file(out_path, svg);
    } else if (*verify_cmd) {
      VerifyOptions opt;
      opt.operations = ops;
      opt.seed = seed ? seed : 1;
      bool all = true;
      Json props = Json::array();
      for (const auto& r : verify_all(opt)) {
        all = all && r.pass();
        std::cout << (r.pass() ? "PASS " : "FAIL ") << r.name << " operations=" << r.operations
                  << " violations=" << r.violations;
        if (!r.first_violation.empty()) std::cout << " first: " << r.first_violation;
        std::cout << "\n";
        props.push_back({{"name", r.name}, {"operations", r.operations}, {"violations", r.violations},
                         {"note", r.note}});
      }
      std::cout << Json{{"schema_version", kSchemaVersion}, {"pass", all}, {"properties", props}}.dump() << "\n";
      return all ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const NotTileable& e) {
    return fail("not_tileable", e.what());
  } catch (const CapExceeded& e) {
    return fail("cap_exceeded", e.what());
  } catch (const BudgetExceeded& e) {
    return fail("budget_exceeded", e.what());
  } catch (const OrderViolation& e) {
    return fail("order_violation", e.what());
  } catch (const FormatError& e) {
    return fail("format", e.what());
  } catch (const InvalidTiling& e) {
    return fail("invalid_tiling", e.what());
  } catch (const InvalidRegion& e) {
    return fail("invalid_region", e.what());
  } catch (const PeelFailure& e) {
    return fail("peel_failure", e.what());
  } catch (const std::invalid_argument& e) {
    return fail("invalid_argument", e.what());
  } catch (const std::exception& e) {
    return fail("error", e.what());
  }
  return 0;
}
