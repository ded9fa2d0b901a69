#include "rspa/cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <nlohmann/json.hpp>

#include "rspa/distributions.hpp"
#include "rspa/equilibrium.hpp"
#include "rspa/game_oracle.hpp"
#include "rspa/revenue.hpp"
#include "rspa/simulate.hpp"
#include "rspa/verify.hpp"

namespace rspa {

namespace {

using nlohmann::ordered_json;

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string canonical_config(const RunConfig& c) {
  std::string s = "command=" + c.command;
  s += ";means=";
  for (std::size_t i = 0; i < c.means.size(); ++i) {
    if (i > 0) s += ",";
    s += format_double(c.means[i]);
  }
  s += ";m=" + format_double(c.symmetric_m);
  s += ";n=" + std::to_string(c.symmetric_n);
  s += ";seed=" + std::to_string(c.seed);
  s += ";trials=" + std::to_string(c.trials);
  s += ";streams=" + std::to_string(c.parallel_streams);
  s += ";grid=" + std::to_string(c.grid);
  s += ";reserve_grid=" + std::to_string(c.reserve_grid);
  s += ";verify_grid=" + std::to_string(c.verify_grid);
  s += ";samples=" + std::to_string(c.samples);
  s += ";perturb_alpha=" + format_double(c.perturb_alpha);
  s += ";with_oracle=" + std::to_string(c.with_oracle);
  s += ";candidates=" + std::to_string(c.run_candidates);
  s += ";sweep_m=" + format_double(c.sweep_m);
  s += ";n_from=" + std::to_string(c.n_from);
  s += ";n_to=" + std::to_string(c.n_to);
  return s;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path.string());
  out << content;
}

std::filesystem::path prepare_out_dir(const RunConfig& config) {
  std::filesystem::path dir(config.out_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void emit_json(const RunConfig& config, const std::filesystem::path& path,
               const ordered_json& doc) {
  const std::string text = doc.dump(2) + "\n";
  write_file(path, text);
  if (config.json_to_stdout) std::cout << text;
}

AuctionInstance make_instance(const RunConfig& config) {
  try {
    return AuctionInstance(resolve_means(config));
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

// --- minimal SVG line charts (diagnostics, not a charting dependency) ------

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

void write_svg_chart(const std::filesystem::path& path, const std::string& title,
                     const std::vector<Series>& series, const std::string& hash) {
  const double width = 640, height = 480, margin = 56;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const Series& s : series) {
    for (const auto& [x, y] : s.points) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (xmax <= xmin) xmax = xmin + 1.0;
  if (ymax <= ymin) ymax = ymin + 1.0;
  const auto sx = [&](double x) {
    return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin);
  };
  const auto sy = [&](double y) {
    return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin);
  };

  const char* colors[] = {"#c62828", "#1565c0", "#2e7d32", "#6a1b9a"};
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
         "viewBox=\"0 0 640 480\">\n";
  svg += "<!-- config_hash=" + hash + " -->\n";
  svg += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  svg += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" + title +
         "</text>\n";
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                margin, height - margin, width - margin, height - margin);
  svg += buf;
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                margin, margin, margin, height - margin);
  svg += buf;
  for (int t = 0; t <= 4; ++t) {
    const double fx = xmin + t * (xmax - xmin) / 4;
    const double fy = ymin + t * (ymax - ymin) / 4;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\" font-size=\"10\">%.3g"
                  "</text>\n",
                  sx(fx), height - margin + 16, fx);
    svg += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\" font-size=\"10\">%.3g"
                  "</text>\n",
                  margin - 6, sy(fy) + 4, fy);
    svg += buf;
  }
  for (std::size_t s = 0; s < series.size(); ++s) {
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += colors[s % 4];
    svg += "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : series[s].points) {
      std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", sx(x), sy(y));
      svg += buf;
    }
    svg += "\"/>\n";
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" fill=\"%s\">%s</text>\n",
                  width - margin - 140.0, margin + 16.0 * (s + 1), colors[s % 4],
                  series[s].label.c_str());
    svg += buf;
  }
  svg += "</svg>\n";
  write_file(path, svg);
}

std::string estimates_csv(const std::vector<std::array<double, 5>>& rows,
                          const std::string& hash) {
  std::string csv = "n,alpha,mass_above_zero,revenue,stderr\n";
  for (const auto& row : rows) {
    csv += std::to_string(static_cast<int>(row[0]));
    for (int i = 1; i < 5; ++i) csv += "," + format_double(row[i]);
    csv += "\n";
  }
  csv += "# config_hash=" + hash + "\n";
  return csv;
}

}  // namespace

std::vector<double> resolve_means(const RunConfig& config) {
  if (!config.means.empty()) return config.means;
  if (config.symmetric_m > 0.0 && config.symmetric_n > 0) {
    return std::vector<double>(config.symmetric_n, config.symmetric_m);
  }
  throw ConfigError("no means given: pass --means or both --m and --n");
}

std::string config_hash(const RunConfig& config) {
  const std::string canonical = canonical_config(config);
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : canonical) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

int cmd_equilibrium(const RunConfig& config) {
  const AuctionInstance instance = make_instance(config);
  const Equilibrium eq = compute_equilibrium(instance);
  const std::string hash = config_hash(config);
  const auto dir = prepare_out_dir(config);

  ordered_json j;
  j["n"] = instance.n();
  j["k"] = eq.k();
  j["alpha"] = eq.alpha();
  j["revenue"] = eq.revenue();
  j["thetas"] = eq.thetas;
  j["sorted_means"] = instance.sorted_means();
  ordered_json order = ordered_json::array();
  for (int i = 0; i < instance.n(); ++i) order.push_back(instance.original_index(i));
  j["bidder_order"] = order;
  j["inactive_means"] = eq.inactive_means();
  j["config_hash"] = hash;
  emit_json(config, dir / "equilibrium.json", j);
  write_file(dir / "equilibrium.txt", to_record(eq) + "# config_hash=" + hash + "\n");

  if (has_boundary_tie(eq)) {
    std::cout << "warning: an inactive mean equals alpha exactly; the tie is treated as "
                 "inactive\n";
  }
  std::cout << "equilibrium: n=" << instance.n() << " k=" << eq.k() << " alpha=" << eq.alpha()
            << " revenue=" << eq.revenue() << "\n";
  return 0;
}

int cmd_verify(const RunConfig& config) {
  const AuctionInstance instance = make_instance(config);
  VerifyConfig vc;
  vc.grid_size = config.verify_grid;
  vc.samples = config.samples;
  vc.seed = config.seed;
  vc.alpha_perturbation = config.perturb_alpha;
  vc.with_game_oracle = config.with_oracle;
  vc.oracle_value_grid = config.grid;
  vc.oracle_reserve_grid = config.reserve_grid;
  if (vc.with_game_oracle && instance.n() > 3) {
    throw ConfigError("the LP oracle is limited to n <= 3");
  }

  const VerificationReport report = run_full_verification(instance, vc);
  const std::string hash = config_hash(config);
  const auto dir = prepare_out_dir(config);
  const std::string text = report_to_json(report, hash);
  write_file(dir / "report.json", text);
  if (config.json_to_stdout) std::cout << text;

  std::cout << "verification " << (report.passed ? "PASSED" : "FAILED")
            << ": k=" << report.k << " alpha=" << report.alpha
            << " indifference=" << report.max_indifference_residual
            << " min_slack=" << report.min_certificate_slack
            << " support_gap=" << report.max_support_gap << "\n";
  return report.passed ? 0 : 1;
}

int cmd_oracle(const RunConfig& config) {
  const AuctionInstance instance = make_instance(config);
  if (instance.n() > 3) throw ConfigError("the LP oracle is limited to n <= 3");
  const Equilibrium eq = compute_equilibrium(instance);
  const DiscretizedGame game = build_game(instance, config.grid, config.reserve_grid);
  const LPSolution solution = solve_minimax(game);
  const std::string hash = config_hash(config);
  const auto dir = prepare_out_dir(config);

  ordered_json j;
  j["game_value"] = solution.game_value;
  j["game_value_gap"] = std::abs(solution.game_value - eq.alpha());
  j["alpha"] = eq.alpha();
  j["reserve_grid"] = game.reserve_grid;
  j["seller_mixture"] = solution.seller_mixture;
  j["dual_gamma"] = solution.dual_gamma;
  j["dual_eta"] = solution.dual_eta;
  j["iterations"] = solution.iterations;
  j["config_hash"] = hash;
  emit_json(config, dir / "oracle.json", j);

  std::cout << "oracle: game_value=" << solution.game_value << " alpha=" << eq.alpha()
            << " gap=" << std::abs(solution.game_value - eq.alpha())
            << " iterations=" << solution.iterations << "\n";
  return 0;
}

int cmd_simulate(const RunConfig& config) {
  const AuctionInstance instance = make_instance(config);
  const Equilibrium eq = compute_equilibrium(instance);
  const WorstCaseDist worst(eq);
  const ReserveDist reserve{eq.alpha(), eq.k()};
  SimConfig sim{config.trials, config.seed, config.parallel_streams};
  const double log_alpha = std::log(eq.alpha());
  const double mass_above_zero = -log_alpha / (eq.k() - 1 - log_alpha);

  const ReserveSampler g_star = equilibrium_reserve_sampler(reserve);
  std::vector<std::pair<std::string, Estimate>> estimates;
  estimates.emplace_back("f_star", estimate_psi(worst_case_sampler(worst), g_star, sim));
  if (config.run_candidates) {
    for (const Candidate& candidate : adversarial_candidates(instance)) {
      estimates.emplace_back(candidate.name, estimate_psi(candidate.sampler, g_star, sim));
    }
  }

  const std::string hash = config_hash(config);
  const auto dir = prepare_out_dir(config);
  std::vector<std::array<double, 5>> rows;
  ordered_json j;
  j["n"] = instance.n();
  j["k"] = eq.k();
  j["alpha"] = eq.alpha();
  j["trials"] = sim.trials;
  j["seed"] = sim.seed;
  ordered_json ests = ordered_json::array();
  for (const auto& [name, est] : estimates) {
    rows.push_back({static_cast<double>(instance.n()), eq.alpha(), mass_above_zero, est.mean,
                    est.std_error});
    ordered_json je;
    je["name"] = name;
    je["revenue"] = est.mean;
    je["stderr"] = est.std_error;
    je["floor_gap"] = est.mean - eq.alpha();
    ests.push_back(je);
    std::cout << "simulate " << name << ": revenue=" << est.mean
              << " stderr=" << est.std_error << " alpha=" << eq.alpha() << "\n";
  }
  j["estimates"] = ests;
  j["config_hash"] = hash;
  emit_json(config, dir / "simulate.json", j);
  write_file(dir / "simulate.csv", estimates_csv(rows, hash));
  return 0;
}

int cmd_sweep(const RunConfig& config) {
  if (!(config.sweep_m > 0.0 && config.sweep_m < 1.0)) {
    throw ConfigError("sweep needs --m in (0,1)");
  }
  if (config.n_from < 1 || config.n_to < config.n_from) {
    throw ConfigError("sweep needs a nonempty range: --n-from <= --n-to, both >= 1");
  }
  std::vector<int> n_list;
  for (int n = config.n_from; n <= config.n_to; ++n) n_list.push_back(n);
  const std::vector<SweepRow> rows = asymptotic_sweep(config.sweep_m, n_list);

  const std::string hash = config_hash(config);
  const auto dir = prepare_out_dir(config);

  std::vector<std::array<double, 5>> csv_rows;
  Series alpha_series{"alpha(n)", {}};
  Series mass_series{"reserve mass > 0", {}};
  ordered_json jrows = ordered_json::array();
  for (const SweepRow& row : rows) {
    csv_rows.push_back({static_cast<double>(row.n), row.alpha_n, row.reserve_mass_above_zero,
                        row.revenue, 0.0});
    alpha_series.points.emplace_back(row.n, row.alpha_n);
    mass_series.points.emplace_back(row.n, row.reserve_mass_above_zero);
    ordered_json jr;
    jr["n"] = row.n;
    jr["alpha"] = row.alpha_n;
    jr["mass_above_zero"] = row.reserve_mass_above_zero;
    jr["revenue"] = row.revenue;
    jrows.push_back(jr);
  }
  write_file(dir / "sweep.csv", estimates_csv(csv_rows, hash));
  ordered_json j;
  j["m"] = config.sweep_m;
  j["rows"] = jrows;
  j["config_hash"] = hash;
  emit_json(config, dir / "sweep.json", j);

  write_svg_chart(dir / "alpha_vs_n.svg", "equilibrium lower bound vs bidder count",
                  {alpha_series}, hash);
  write_svg_chart(dir / "reserve_mass_vs_n.svg", "reserve mass above zero vs bidder count",
                  {mass_series}, hash);

  // CDF overlays (marginal value law of one bidder and the reserve law) at
  // the two endpoints of the sweep.
  for (int n : {config.n_from, config.n_to}) {
    const double alpha = solve_alpha(n, config.sweep_m);
    const HighestValueDist h{alpha};
    const ReserveDist g{alpha, n};
    const double theta = 1.0 / n;
    Series marginal{"bidder value CDF", {}};
    Series reserve_cdf{"reserve CDF", {}};
    const int points = 512;
    for (int i = 0; i <= points; ++i) {
      const double v = static_cast<double>(i) / points;
      const double m_cdf = v < alpha ? 0.0 : (1.0 - theta) + theta * h_cdf(h, v);
      marginal.points.emplace_back(v, m_cdf);
      reserve_cdf.points.emplace_back(v, g_cdf(g, v));
    }
    write_svg_chart(dir / ("cdf_overlay_n" + std::to_string(n) + ".svg"),
                    "marginal value and reserve CDFs, n=" + std::to_string(n),
                    {marginal, reserve_cdf}, hash);
  }

  std::cout << "sweep: m=" << config.sweep_m << " n=" << config.n_from << ".." << config.n_to
            << " alpha(n_max)=" << rows.back().alpha_n
            << " mass(n_max)=" << rows.back().reserve_mass_above_zero << "\n";
  return 0;
}

int run_command(const RunConfig& config) {
  if (config.command == "equilibrium") return cmd_equilibrium(config);
  if (config.command == "verify") return cmd_verify(config);
  if (config.command == "oracle") return cmd_oracle(config);
  if (config.command == "simulate") return cmd_simulate(config);
  if (config.command == "sweep") return cmd_sweep(config);
  throw ConfigError("unknown command: " + config.command);
}

}  // namespace rspa
