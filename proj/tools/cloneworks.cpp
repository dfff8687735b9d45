// cloneworks command-line tool.
//
//   cloneworks <command> [ALGEBRA...] [flags]
//
// ALGEBRA is a path to an algebra file or builtin:<name>.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cloneworks/cli.hpp"

namespace {

  using cloneworks::RunConfig;

  void common_flags(CLI::App* sub, RunConfig& cfg, std::string& format) {
    sub->add_option("--max-arity", cfg.max_arity, "Largest arity n to examine");
    sub->add_option("--budget", cfg.budget,
                    "Maximum number of tables stored per closure");
    sub->add_option("--format", format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--seed", cfg.seed, "Seed for sampled checks");
    sub->add_option("--out", cfg.out, "Write the report here instead of stdout");
    sub->add_flag("--i-know-this-explodes", cfg.explodes,
                  "Allow clone enumeration on the a4-* builtins");
    sub->add_flag("--timing", cfg.timing, "Add wall-clock time to the report");
  }

  void target_flags(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--arity", cfg.arity, "Arity of the target");
    sub->add_option("--target-table", cfg.target_table,
                    "Target table, values in lexicographic argument order");
    sub->add_option("--target-term", cfg.target_term, "Target as a term");
    sub->add_option("--target", cfg.target, "Named target: sum, max, min, const<v>");
  }

}  // namespace

int main(int argc, char** argv) {
  RunConfig   cfg;
  std::string format = "json";

  CLI::App app{"cloneworks: term operations of finite algebras"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cloneworks::version);

  auto add = [&](std::string const& name, std::string const& help,
                 std::size_t algebras) {
    auto* sub = app.add_subcommand(name, help);
    auto* pos = sub->add_option("algebra", cfg.algebras,
                                "Algebra file or builtin:<name>");
    pos->required()->expected(static_cast<int>(algebras));
    common_flags(sub, cfg, format);
    return sub;
  };

  add("info", "Describe an algebra", 1);
  add("clone", "List the clone at one arity", 1)
      ->add_option("--arity", cfg.arity, "Arity n (default 2)");
  add("seq", "Fs, Ht and Len for n = 1..max-arity", 1);
  add("bounds", "Check the general inequalities between Fs, Ht and Len", 1);
  {
    auto* s = add("sigma", "Balanced sum over a binary symbol", 1);
    s->add_option("--n", cfg.n, "Number of summands (default 8)");
    s->add_option("--op", cfg.op, "Binary symbol (default: plus designation)");
  }
  target_flags(add("primal-synth", "Synthesize a term over a primal basis", 1),
               cfg);
  add("primality", "Is every n-ary operation a term operation?", 1);
  add("malcev", "Search a Mal'cev term", 1);
  add("cube", "Build cube terms q_2..q_n", 1)
      ->add_option("--n", cfg.n, "Largest n (default 2)");
  add("spn", "Check supernilpotency of a degree", 1)
      ->add_option("--degree", cfg.degree, "Degree k (default 1)");
  {
    auto* s = add("rewrite", "Rewrite a term to logarithmic height", 1);
    s->add_option("--k", cfg.k, "Cube term q_k (default 2)");
    s->add_option("--base-arity", cfg.base_arity, "Base arity n0 (default k+2)");
    s->add_option("--epsilon", cfg.epsilon, "Epsilon (default 1/(2k))");
    s->add_option("--verify", cfg.verify, "exhaustive, none or sample:N");
    s->add_option("--input-term", cfg.input_term, "Input term");
    s->add_option("--n", cfg.n, "Arity of the input term");
    s->add_option("--chain", cfg.chain, "Use the left chain x1+...+xN as input");
    s->add_option("--op", cfg.op, "Binary symbol of the chain");
  }
  {
    auto* s = add("decompose", "Decompose a table through q and small operations", 1);
    s->add_option("--degree", cfg.degree, "Supernilpotency degree (default 1)");
    target_flags(s, cfg);
  }
  add("chain", "Mal'cev chains t_1..t_k", 1)
      ->add_option("--k", cfg.k, "Largest k (default 2)");
  add("equiv", "Compare the clones of two algebras", 2);
  {
    auto* demo = app.add_subcommand("demo", "Demonstrations");
    demo->require_subcommand(1);
    auto* s = demo->add_subcommand("commutator",
                                   "Iterated commutator versus its expansion");
    s->add_option("algebra", cfg.algebras,
                  "Group and group-with-commutator (default: the a4 builtins)")
        ->expected(0, 2);
    common_flags(s, cfg, format);
    s->add_option("--n", cfg.n, "Largest n (default 5)");
    s->add_option("--samples", cfg.samples, "Random assignments per n");
  }

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : cloneworks::ExitCode::input_error;
  }

  for (auto const* sub : app.get_subcommands()) {
    cfg.command = sub->get_name();
    for (auto const* inner : sub->get_subcommands()) {
      cfg.command += " " + inner->get_name();
    }
  }
  cfg.format = cloneworks::parse_format(format);

  auto        result = cloneworks::run(cfg);
  std::string text;
  try {
    text = cloneworks::emit(result.report, cfg.format);
  } catch (cloneworks::Error const& e) {
    std::cerr << "cloneworks: " << e.what() << "\n";
    return cloneworks::ExitCode::input_error;
  }
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.out, std::ios::binary);
    if (!(out << text)) {
      std::cerr << "cloneworks: cannot write '" << cfg.out << "'\n";
      return cloneworks::ExitCode::input_error;
    }
  }
  if (result.report.contains("error")) {
    std::cerr << "cloneworks: "
              << result.report["error"].value("message", "see report") << "\n";
  }
  return result.exit_code;
}
