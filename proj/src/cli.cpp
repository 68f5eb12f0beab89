#include "hsign/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "hsign/coefficients.hpp"
#include "hsign/dickman.hpp"
#include "hsign/error.hpp"
#include "hsign/experiment.hpp"
#include "hsign/field.hpp"
#include "hsign/ideals.hpp"
#include "hsign/output.hpp"
#include "hsign/sieve.hpp"
#include "hsign/sums.hpp"

namespace hsign {

namespace {

constexpr const char* kCommandList =
    "Commands:\n"
    "  field info\n"
    "  ideals count | squarefree | smooth | mertens   --limit X[,X...] [--smooth-bound Y] "
    "[--squarefree]\n"
    "  dickman --u U\n"
    "  dickman kappa\n"
    "  coeffs sample --limit X\n"
    "  sieve hsum --y Y --u U\n"
    "  sieve lower-bound --coeffs FILE --y Y --u U\n"
    "  sums T | S --coeffs FILE --x X\n"
    "  sums first-negative --coeffs FILE --max X\n"
    "  sums signs --coeffs FILE --x X\n"
    "  sums lvalue --coeffs FILE --s S [--truncation T]\n"
    "  sums growth --coeffs FILE --xs X1,X2,X3[,...]\n"
    "  experiment --config FILE\n";

struct Globals {
  std::int64_t disc = 1;
  std::string format;
  std::string out;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

class Session {
 public:
  Session(std::ostream& out, const Globals& globals) : fallback_(out), globals_(globals) {}

  std::ostream& stream() {
    if (globals_.out.empty()) return fallback_;
    if (!file_) {
      file_.emplace(globals_.out, std::ios::binary);
      if (!*file_) throw IoError("cannot write " + globals_.out);
    }
    return *file_;
  }

  OutputFormat format(OutputFormat preferred) const {
    return globals_.format.empty() ? preferred : parse_format(globals_.format);
  }

  void emit(const Table& table, OutputFormat preferred = OutputFormat::Csv) {
    write_table(table, format(preferred), stream());
  }

  void finish() {
    if (file_) {
      file_->flush();
      if (!*file_) throw IoError("failed writing " + globals_.out);
    }
  }

 private:
  std::ostream& fallback_;
  const Globals& globals_;
  std::optional<std::ofstream> file_;
};

Record single(Table& table) {
  table.single_record = true;
  return Record{};
}

double ideal_prediction(const std::string& kind, const QuadraticField& field, double x, double y,
                        bool squarefree) {
  const double c = zeta_residue(field);
  if (kind == "count") return c * x;
  if (kind == "squarefree") return c / dedekind_zeta(field, 2.0) * x;
  if (kind == "smooth") {
    const double u = std::log(x) / std::log(y);
    const double rho = u <= 1.0 ? 1.0 : dickman_rho(u);
    return (squarefree ? c / dedekind_zeta(field, 2.0) : c) * x * rho;
  }
  return std::log(std::log(x));  // mertens
}

double ideal_value(const std::string& kind, const QuadraticField& field, double x, double y,
                   bool squarefree) {
  if (kind == "count") return static_cast<double>(count_ideals(field, x));
  if (kind == "squarefree") return static_cast<double>(count_squarefree(field, x));
  if (kind == "smooth") return static_cast<double>(count_smooth(field, x, y, squarefree));
  return prime_reciprocal_sum(field, x);
}

double largest_norm(const CoefficientSystem& system) {
  double best = 1.0;
  for (const auto& [p, _] : system.prime_values()) best = std::max(best, static_cast<double>(p.norm));
  return best;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sign statistics of normalized Hilbert cusp-form coefficients over Q and real "
               "quadratic fields"};
  app.name("hsign");
  app.footer(kCommandList);
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--disc", g.disc, "Field discriminant: 1 for Q or a fundamental D > 1");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", g.out, "Write output to PATH instead of stdout");
  app.add_option("--seed", g.seed, "Seed for every random draw");
  app.add_option("--threads", g.threads, "Worker threads for long sums")->check(CLI::Range(1u, 256u));

  std::function<void(Session&)> action;
  auto sub = [](CLI::App* parent, const std::string& name, const std::string& help) {
    CLI::App* s = parent->add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  // field
  CLI::App* field_cmd = sub(&app, "field", "Quadratic field data");
  field_cmd->require_subcommand(1);
  sub(field_cmd, "info", "disc, degree, c_F and zeta_F(2)")->callback([&] {
    action = [&](Session& s) {
      const QuadraticField field(g.disc);
      Table t;
      t.rows.push_back(single(t)
                           .add("disc", field.disc())
                           .add("degree", std::int64_t{field.degree()})
                           .add("c_F", zeta_residue(field))
                           .add("zeta_F_2", dedekind_zeta(field, 2.0)));
      s.emit(t, OutputFormat::Json);
    };
  });

  // ideals
  CLI::App* ideals_cmd = sub(&app, "ideals", "Ideal counting functions against their asymptotics");
  ideals_cmd->require_subcommand(1);
  std::vector<double> limits;
  double smooth_bound = 0.0;
  bool squarefree = false;
  for (const std::string kind : {"count", "squarefree", "smooth", "mertens"}) {
    CLI::App* c = sub(ideals_cmd, kind, kind == "mertens" ? "sum of 1/N(p) over prime ideals"
                                                         : kind + " ideals of norm <= x");
    c->add_option("--limit", limits, "Norm bounds")->required()->delimiter(',');
    if (kind == "smooth") {
      c->add_option("--smooth-bound", smooth_bound, "Largest admitted prime norm")->required();
      c->add_flag("--squarefree", squarefree, "Count square-free smooth ideals only");
    }
    c->callback([&, kind] {
      action = [&, kind](Session& s) {
        const QuadraticField field(g.disc);
        Table t;
        t.comments.push_back("ideals " + kind + ", disc=" + std::to_string(g.disc) +
                             (kind == "smooth" ? ", y=" + format_real(smooth_bound) : std::string{}));
        for (double x : limits) {
          const double v = ideal_value(kind, field, x, smooth_bound, squarefree);
          const double p = ideal_prediction(kind, field, x, smooth_bound, squarefree);
          t.rows.push_back(Record{}.add("x", x).add("value", v).add("prediction", p).add("ratio", v / p));
        }
        s.emit(t);
      };
    });
  }

  // dickman
  CLI::App* dickman_cmd = sub(&app, "dickman", "Dickman's rho and the kappa threshold");
  double dickman_u = 0.0;
  CLI::Option* u_opt = dickman_cmd->add_option("--u", dickman_u, "Argument, 0 < u <= 10");
  sub(dickman_cmd, "kappa", "Root of rho(2u) = 2 log u on (10/9, 3/2)")->callback([&] {
    action = [&](Session& s) {
      const double kappa = solve_kappa();
      const auto& solver = default_dickman_solver();
      Table t;
      t.rows.push_back(single(t)
                           .add("kappa", kappa)
                           .add("gap_10_9", kappa_gap(solver, 10.0 / 9.0))
                           .add("gap_kappa", kappa_gap(solver, kappa)));
      s.emit(t);
    };
  });
  dickman_cmd->callback([&] {
    if (dickman_cmd->get_subcommands().empty()) {
      if (u_opt->count() == 0) throw CLI::RequiredError("--u");
      action = [&](Session& s) {
        Table t;
        t.rows.push_back(single(t).add("u", dickman_u).add("rho", dickman_rho(dickman_u)));
        s.emit(t);
      };
    }
  });

  // coeffs
  CLI::App* coeffs_cmd = sub(&app, "coeffs", "Coefficient systems");
  coeffs_cmd->require_subcommand(1);
  double coeff_limit = 0.0;
  CLI::App* sample_cmd = sub(coeffs_cmd, "sample", "Sato-Tate sample for every prime of norm <= limit");
  sample_cmd->add_option("--limit", coeff_limit, "Prime norm bound")->required();
  sample_cmd->callback([&] {
    action = [&](Session& s) {
      write_coefficients_csv(sample_sato_tate(QuadraticField(g.disc), coeff_limit, g.seed), s.stream());
    };
  });

  // sieve
  CLI::App* sieve_cmd = sub(&app, "sieve", "The sieve weight h_y");
  sieve_cmd->require_subcommand(1);
  double sieve_y = 0.0;
  double sieve_u = 1.0;
  std::string coeff_path;
  CLI::App* hsum_cmd = sub(sieve_cmd, "hsum", "sum of h_y over norms <= y^u against its main term");
  hsum_cmd->add_option("--y", sieve_y, "Sieve level")->required();
  hsum_cmd->add_option("--u", sieve_u, "Exponent in [1, 3/2]")->required();
  hsum_cmd->callback([&] {
    action = [&](Session& s) {
      const QuadraticField field(g.disc);
      const auto empirical = sieve_weight_sum(field, sieve_y, sieve_u);
      const double prediction = sieve_weight_sum_main_term(field, sieve_y, sieve_u);
      Table t;
      t.comments.push_back("sieve hsum, disc=" + std::to_string(g.disc));
      t.rows.push_back(Record{}
                           .add("y", sieve_y)
                           .add("u", sieve_u)
                           .add("empirical", empirical)
                           .add("prediction", prediction)
                           .add("ratio", static_cast<double>(empirical) / prediction));
      s.emit(t);
    };
  });
  CLI::App* lb_cmd = sub(sieve_cmd, "lower-bound", "Check T(y^u) >= T^#(y^u) >= sum of h_y");
  lb_cmd->add_option("--coeffs", coeff_path, "Coefficient CSV")->required();
  lb_cmd->add_option("--y", sieve_y, "Sieve level")->required();
  lb_cmd->add_option("--u", sieve_u, "Exponent in [1, kappa)")->required();
  lb_cmd->callback([&] {
    action = [&](Session& s) {
      const LowerBoundReport r = check_lower_bound(load_coefficients_csv(coeff_path), sieve_y, sieve_u);
      Table t;
      Record rec = single(t);
      rec.add("y", r.y)
          .add("u", r.u)
          .add("partial_sum", r.partial_sum)
          .add("squarefree_partial_sum", r.squarefree_partial_sum)
          .add("weight_sum", r.weight_sum)
          .add("quotient_nonnegative", r.quotient_nonnegative)
          .add("holds", r.holds)
          .add("premise_violation", r.premise_violation
                                        ? "P(" + std::to_string(r.premise_violation->rational_prime) +
                                              "," + std::to_string(r.premise_violation->label) + ")"
                                        : std::string{});
      t.rows.push_back(std::move(rec));
      s.emit(t, OutputFormat::Json);
    };
  });

  // sums
  CLI::App* sums_cmd = sub(&app, "sums", "Sums of coefficients and sign statistics");
  sums_cmd->require_subcommand(1);
  double sums_x = 0.0;
  double lvalue_s = 2.0;
  double truncation = 0.0;
  std::vector<double> xs;
  auto with_coeffs = [&](CLI::App* c) {
    c->add_option("--coeffs", coeff_path, "Coefficient CSV")->required();
    return c;
  };
  for (const std::string which : {"T", "S"}) {
    CLI::App* c = with_coeffs(sub(sums_cmd, which,
                                  which == "T" ? "T(f,x) = sum of C(m), N(m) <= x"
                                               : "S(f,x) = sum of C(m) log(x/N(m)), N(m) <= x"));
    c->add_option("--x", sums_x, "Norm bound")->required();
    c->callback([&, which] {
      action = [&, which](Session& s) {
        const CoefficientSystem system = load_coefficients_csv(coeff_path);
        Table t;
        Record rec;
        rec.add("x", sums_x);
        if (which == "T") {
          rec.add("T", partial_sum(system, sums_x, g.threads));
        } else {
          rec.add("S", log_weighted_sum(system, sums_x, g.threads))
              .add("S_by_parts", log_weighted_sum_by_parts(system, sums_x));
        }
        t.rows.push_back(std::move(rec));
        s.emit(t);
      };
    });
  }
  CLI::App* fn_cmd = with_coeffs(sub(sums_cmd, "first-negative", "First ideal with C(m) < 0"));
  fn_cmd->add_option("--max", sums_x, "Largest norm searched")->required();
  fn_cmd->callback([&] {
    action = [&](Session& s) {
      const CoefficientSystem system = load_coefficients_csv(coeff_path);
      Table t;
      Record rec = single(t);
      if (const auto hit = first_negative(system, sums_x)) {
        rec.add("found", true)
            .add("norm", static_cast<std::int64_t>(hit->norm()))
            .add("ideal", to_string(*hit))
            .add("value", system.value(*hit));
      } else {
        rec.add("found", false).add("norm", std::int64_t{0}).add("ideal", std::string{}).add("value", 0.0);
      }
      t.rows.push_back(std::move(rec));
      s.emit(t);
    };
  });
  CLI::App* signs_cmd = with_coeffs(sub(sums_cmd, "signs", "Counts of positive, negative and zero C(m)"));
  signs_cmd->add_option("--x", sums_x, "Norm bound")->required();
  signs_cmd->callback([&] {
    action = [&](Session& s) {
      const SignReport r = sign_counts(load_coefficients_csv(coeff_path), sums_x);
      Table t;
      t.rows.push_back(single(t)
                           .add("x", r.x)
                           .add("positives", r.positives)
                           .add("negatives", r.negatives)
                           .add("zeros", r.zeros)
                           .add("euler_product_prediction", r.euler_product_prediction)
                           .add("half_deviation", r.half_deviation));
      s.emit(t, OutputFormat::Json);
    };
  });
  CLI::App* lv_cmd = with_coeffs(sub(sums_cmd, "lvalue", "L(s,f) by series and by Euler product"));
  lv_cmd->add_option("--s", lvalue_s, "Real s > 1")->required();
  lv_cmd->add_option("--truncation", truncation,
                     "Norm cutoff (default: largest prime norm in the file)");
  lv_cmd->callback([&] {
    action = [&](Session& s) {
      const CoefficientSystem system = load_coefficients_csv(coeff_path);
      const double cut = truncation > 0.0 ? truncation : largest_norm(system);
      const LValueReport r = l_value(system, lvalue_s, cut);
      Table t;
      t.rows.push_back(single(t)
                           .add("s", r.s)
                           .add("truncation", r.truncation)
                           .add("series", r.series)
                           .add("product", r.product)
                           .add("discrepancy", r.discrepancy));
      s.emit(t);
    };
  });
  CLI::App* growth_cmd = with_coeffs(sub(sums_cmd, "growth", "Fitted growth exponents of |T| and |S|"));
  growth_cmd->add_option("--xs", xs, "Increasing norm bounds")->required()->delimiter(',');
  growth_cmd->callback([&] {
    action = [&](Session& s) {
      const CoefficientSystem system = load_coefficients_csv(coeff_path);
      std::vector<std::pair<double, double>> t_samples, s_samples;
      Table t;
      for (double x : xs) {
        const double tv = partial_sum(system, x, g.threads);
        const double sv = log_weighted_sum(system, x, g.threads);
        t_samples.emplace_back(x, tv);
        s_samples.emplace_back(x, sv);
        t.rows.push_back(Record{}.add("x", x).add("T", tv).add("S", sv));
      }
      const double et = growth_exponent(t_samples);
      const double es = growth_exponent(s_samples);
      if (s.format(OutputFormat::Csv) == OutputFormat::Csv) {
        t.comments.push_back("exponent_T=" + format_real(et) + ", exponent_S=" + format_real(es));
        s.emit(t);
      } else {
        nlohmann::ordered_json doc;
        doc["exponent_T"] = std::stod(format_real(et));
        doc["exponent_S"] = std::stod(format_real(es));
        doc["rows"] = nlohmann::ordered_json::array();
        for (const Record& r : t.rows) doc["rows"].push_back(to_json(r));
        s.stream() << doc.dump(2) << '\n';
      }
    };
  });

  // experiment
  CLI::App* exp_cmd = sub(&app, "experiment", "Run a JSON experiment bundle; global flags override it");
  std::string config_path;
  exp_cmd->add_option("--config", config_path, "Experiment JSON")->required();
  exp_cmd->callback([&] {
    action = [&](Session&) {
      ExperimentConfig config = load_experiment_config(config_path);
      if (app.count("--disc")) config.disc = g.disc;
      if (app.count("--seed")) config.seed = g.seed;
      if (!g.format.empty()) config.format = parse_format(g.format);
      if (!g.out.empty()) config.output = g.out;
      run_experiment(config, out, g.threads);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  try {
    Session session(out, g);
    if (!action) throw ConfigError("no command given");
    action(session);
    session.finish();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace hsign
