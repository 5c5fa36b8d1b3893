#include <CLI11.hpp>

#include "commands.hpp"
#include "cylradon/version.hpp"

int main(int argc, char** argv) {
  using cylradon::cli::Overrides;
  CLI::App app{"Radon transform on the cylinder: forward, inverse, dual and property checks"};
  app.set_version_flag("--version", cylradon::version);
  app.require_subcommand(1, 1);

  Overrides o;
  std::string config, out, suite;
  int modes = 0, quad_nodes = 0;
  unsigned seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory");
    sub->add_option("--modes", modes, "highest circular harmonic |n|")->check(CLI::NonNegativeNumber);
    sub->add_option("--quad-nodes", quad_nodes, "angular quadrature nodes")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "seed for randomized checks");
  };
  std::vector<CLI::App*> subs{
      app.add_subcommand("forward", "sample R f on a (theta, rho) grid"),
      app.add_subcommand("invert", "recover f from R f mode by mode"),
      app.add_subcommand("dual", "sample R* g on an (s, t) grid"),
      app.add_subcommand("dualinvert", "recover g from R* g mode by mode"),
      app.add_subcommand("check", "run a property suite: cormack, bound, nullspace, support, duality, all"),
  };
  for (auto* s : subs) add_common(s);
  CLI::Option* suite_opt = subs.back()->add_option("suite", suite, "suite name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cylradon::cli::exit_usage;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (sub->count("--config")) o.config = config;
  if (sub->count("--out")) o.out = out;
  if (sub->count("--modes")) o.modes = modes;
  if (sub->count("--quad-nodes")) o.quad_nodes = quad_nodes;
  if (sub->count("--seed")) o.seed = seed;
  if (suite_opt->count()) o.suite = suite;
  return cylradon::cli::run(sub->get_name(), o);
}
