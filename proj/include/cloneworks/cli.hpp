// cloneworks - term operations of finite algebras
//
// Subcommand dispatch: a validated RunConfig in, a JSON report and an exit
// code out. Exit codes: 0 every check passed, 1 a mathematical property
// failed (the report carries a witness), 2 input error, 3 budget exceeded or
// otherwise inconclusive.

#ifndef CLONEWORKS_CLI_HPP_
#define CLONEWORKS_CLI_HPP_

#include <chrono>      // for steady_clock
#include <cmath>       // for log2
#include <cstddef>     // for size_t
#include <cstdint>     // for uint64_t
#include <fstream>     // for ifstream
#include <functional>  // for function
#include <map>         // for map
#include <optional>    // for optional
#include <random>      // for mt19937_64
#include <sstream>     // for ostringstream
#include <string>      // for string
#include <vector>      // for vector

#include "algebra.hpp"
#include "bounds.hpp"
#include "builtins.hpp"
#include "clone.hpp"
#include "error.hpp"
#include "malcev.hpp"
#include "primal.hpp"
#include "report.hpp"
#include "rewrite.hpp"
#include "term.hpp"

namespace cloneworks {

  enum ExitCode : int { pass = 0, math_failure = 1, input_error = 2,
                        inconclusive = 3 };

  struct RunConfig {
    std::string              command;   // "demo commutator" for the demo
    std::vector<std::string> algebras;  // paths or builtin:<name>
    std::size_t              max_arity = 4;
    std::size_t              arity     = 0;  // 0: command default
    std::size_t              budget    = default_budget;
    Format                   format    = Format::json;
    std::uint64_t            seed      = 1;
    std::string              out;
    std::size_t              n          = 0;
    std::size_t              degree     = 1;
    std::size_t              k          = 0;  // 0: command default
    std::size_t              base_arity = 0;  // 0: k + 2
    double                   epsilon    = 0;  // 0: 1/(2k)
    std::string              verify     = "exhaustive";
    std::string              target_table;
    std::string              target_term;
    std::string              target;  // named target, see named_target
    std::string              input_term;
    std::size_t              chain = 0;  // rewrite a left chain of this length
    std::string              op;         // symbol for sigma / chains
    std::size_t              samples = 1000;
    bool                     explodes = false;
    bool                     timing   = false;
  };

  struct RunResult {
    json report;
    int  exit_code = ExitCode::pass;
  };

  namespace detail {
    inline bool starts_with(std::string const& s, std::string const& p) {
      return s.compare(0, p.size(), p) == 0;
    }

    inline std::string builtin_name(std::string const& spec) {
      return starts_with(spec, "builtin:") ? spec.substr(8) : std::string();
    }

    inline FiniteAlgebra load_algebra(std::string const& spec) {
      if (auto name = builtin_name(spec); !name.empty()) {
        return builtin_algebra(name);
      }
      std::ifstream in(spec);
      if (!in) {
        throw Error("cannot read algebra file '" + spec + "'");
      }
      std::ostringstream text;
      text << in.rdbuf();
      return parse_algebra(text.str());
    }

    //! sum, max, min (over element order) and const<v>, all of any arity.
    inline OpTable named_target(std::string const& name, std::size_t m,
                                std::size_t n) {
      std::vector<Element> values(checked_pow(m, n));
      std::vector<Element> tuple(n, 0);
      std::function<Element(std::span<Element const>)> f;
      if (name == "sum") {
        f = [m](auto t) {
          std::size_t s = 0;
          for (auto v : t) {
            s += v;
          }
          return static_cast<Element>(s % m);
        };
      } else if (name == "max") {
        f = [](auto t) { return *std::max_element(t.begin(), t.end()); };
      } else if (name == "min") {
        f = [](auto t) { return *std::min_element(t.begin(), t.end()); };
      } else if (starts_with(name, "const")) {
        std::size_t v = std::stoul(name.substr(5));
        if (v >= m) {
          throw Error("constant " + std::to_string(v) + " outside the universe");
        }
        f = [v](auto) { return static_cast<Element>(v); };
      } else {
        throw Error("unknown target '" + name + "' (sum, max, min, const<v>)");
      }
      for (auto& val : values) {
        val = f(tuple);
        next_tuple(tuple, m);
      }
      return OpTable(m, n, std::move(values));
    }

    inline VerifySpec parse_verify(std::string const& text,
                                   std::uint64_t      seed) {
      VerifySpec spec;
      spec.seed = seed;
      if (text == "exhaustive") {
        spec.mode = VerifyMode::exhaustive;
      } else if (text == "none") {
        spec.mode = VerifyMode::none;
      } else if (starts_with(text, "sample:")) {
        spec.mode = VerifyMode::sample;
        try {
          spec.samples = std::stoul(text.substr(7));
        } catch (std::exception const&) {
          throw Error("bad sample count in '" + text + "'");
        }
      } else {
        throw Error("--verify takes exhaustive, none or sample:N");
      }
      return spec;
    }

    //! The designated plus, else the first binary basic operation.
    inline OperationSymbol binary_symbol(FiniteAlgebra const& alg,
                                         std::string const&   requested) {
      std::string name = requested;
      if (name.empty()) {
        name = alg.designation("plus").value_or("");
      }
      if (name.empty()) {
        for (auto const& op : alg.operations()) {
          if (op.symbol.arity == 2) {
            return op.symbol;
          }
        }
        throw Error("algebra '" + alg.name() + "' has no binary operation");
      }
      auto const* op = alg.find(name);
      if (op == nullptr) {
        throw Error("no operation named '" + name + "'");
      }
      if (op->symbol.arity != 2) {
        throw Error("operation '" + name + "' is not binary");
      }
      return op->symbol;
    }

    inline Term left_chain(OperationSymbol const& plus, std::size_t n) {
      Term t = Term::var(1);
      for (std::size_t i = 2; i <= n; ++i) {
        t = Term::app(plus, {t, Term::var(i)});
      }
      return t;
    }

    //! Terms longer than this are reported by their metrics only.
    inline constexpr std::uint64_t max_printed_length = 200'000;

    inline json term_or_null(Term const& t) {
      return t.length() <= max_printed_length ? json(print_term(t))
                                              : json(nullptr);
    }

    struct Context {
      RunConfig const&           cfg;
      std::vector<FiniteAlgebra> algebras;
      json                       results = json::object();
      int                        exit_code = ExitCode::pass;

      FiniteAlgebra const& alg(std::size_t i = 0) const {
        return algebras.at(i);
      }

      void fail() {
        if (exit_code == ExitCode::pass || exit_code == ExitCode::inconclusive) {
          exit_code = ExitCode::math_failure;
        }
      }

      void undecided() {
        if (exit_code == ExitCode::pass) {
          exit_code = ExitCode::inconclusive;
        }
      }

      //! The target of primal-synth and decompose.
      OpTable target(std::size_t default_arity) const {
        std::size_t const m       = alg().universe_size();
        int               sources = static_cast<int>(!cfg.target_table.empty())
                      + static_cast<int>(!cfg.target_term.empty())
                      + static_cast<int>(!cfg.target.empty());
        if (sources != 1) {
          throw Error(
              "give exactly one of --target-table, --target-term, --target");
        }
        if (!cfg.target_term.empty()) {
          Term t = parse_term(cfg.target_term, alg());
          std::size_t n
              = cfg.arity != 0 ? cfg.arity : std::max<std::size_t>(1, t.max_variable());
          return induced_table(alg(), t, n);
        }
        std::size_t const n = cfg.arity != 0 ? cfg.arity : default_arity;
        if (!cfg.target.empty()) {
          return named_target(cfg.target, m, n);
        }
        return parse_table(cfg.target_table, m, n);
      }
    };

    ////////////////////////////////////////////////////////////////////////
    // Subcommands
    ////////////////////////////////////////////////////////////////////////

    inline void cmd_info(Context& ctx) {
      ctx.results = algebra_json(ctx.alg());
    }

    inline void cmd_clone(Context& ctx) {
      std::size_t const n     = ctx.cfg.arity != 0 ? ctx.cfg.arity : 2;
      CloneTable        clone = close_by_height(ctx.alg(), n, ctx.cfg.budget);
      json              entries = json::array();
      if (clone.complete()) {
        clone = assign_min_lengths(ctx.alg(), std::move(clone));
      } else {
        ctx.undecided();
      }
      for (auto i : clone.canonical_order()) {
        auto const& e = clone.entries()[i];
        json        j{{"table", table_json(e.table)},
               {"height", e.layer},
               {"height_term", print_term(e.min_height_term)}};
        if (e.min_length_term) {
          j["length"]      = e.min_length;
          j["length_term"] = print_term(*e.min_length_term);
        }
        entries.push_back(j);
      }
      ctx.results = {{"algebra", ctx.alg().name()},
                     {"n", n},
                     {"complete", clone.complete()},
                     {"size", clone.size()},
                     {"entries", entries}};
    }

    inline void cmd_seq(Context& ctx) {
      auto rows = complexity_sequences(ctx.alg(), ctx.cfg.max_arity,
                                       ctx.cfg.budget);
      json out  = json::array();
      for (auto const& r : rows) {
        if (!r.complete) {
          ctx.undecided();
        }
        out.push_back(sequence_row_json(ctx.alg().name(), r));
      }
      ctx.results = {{"algebra", ctx.alg().name()}, {"rows", out}};
    }

    inline void cmd_bounds(Context& ctx) {
      auto report = verify_general_bounds(ctx.alg(), ctx.cfg.max_arity,
                                          ctx.cfg.budget);
      if (report.any_failure()) {
        ctx.fail();
      } else if (report.any_incomplete()) {
        ctx.undecided();
      }
      ctx.results = bounds_json(report);
    }

    inline void cmd_sigma(Context& ctx) {
      std::size_t const n = ctx.cfg.n != 0 ? ctx.cfg.n : 8;
      auto const        t = binary_symbol(ctx.alg(), ctx.cfg.op);
      Term const        s = build_sigma(t, n);
      std::size_t const expected = ceil_log2(BigInt(n));
      json              j{{"symbol", t.name},
               {"n", n},
               {"term", term_or_null(s)},
               {"height", s.height()},
               {"expected_height", expected},
               {"height_ok", s.height() == expected}};
      if (s.height() != expected) {
        ctx.fail();
      }
      auto zero_name = ctx.alg().designation("zero");
      if (zero_name && ctx.alg().find(*zero_name)->table.is_constant()) {
        Element zero = ctx.alg().find(*zero_name)->table[0];
        auto    bad  = sigma_absorption_failure(ctx.alg(), t, zero, n);
        j["absorption"] = {{"zero", zero}, {"holds", !bad.has_value()}};
        if (bad) {
          j["absorption"]["witness"]
              = {{"position", bad->first}, {"x", bad->second}};
          ctx.fail();
        }
      }
      ctx.results = j;
    }

    inline void cmd_primal_synth(Context& ctx) {
      PrimalBasis const basis  = validate_basis(ctx.alg(), ctx.cfg.budget);
      OpTable const     target = ctx.target(2);
      Term const        t      = synthesize_term(basis, target);
      OpTable const     got    = induced_table(basis.algebra, t, target.arity());
      std::size_t const bound  = synthesis_height_bound(
          basis.algebra.universe_size(), target.arity(), basis.s);
      bool const match = got == target;
      if (!match || t.height() > bound) {
        ctx.fail();
      }
      ctx.results = {{"algebra", ctx.alg().name()},
                     {"n", target.arity()},
                     {"target", table_json(target)},
                     {"s", basis.s},
                     {"term", term_or_null(t)},
                     {"height", t.height()},
                     {"length", t.length()},
                     {"height_bound", bound},
                     {"within_bound", t.height() <= bound},
                     {"verified", {{"mode", "exhaustive"},
                                   {"checked", target.size()},
                                   {"match", match}}}};
    }

    inline void cmd_primality(Context& ctx) {
      auto rows = primality_probe(ctx.alg(), ctx.cfg.max_arity, ctx.cfg.budget);
      for (auto const& r : rows) {
        if (r.status == PrimalityStatus::inconclusive) {
          ctx.undecided();
        }
      }
      ctx.results = {{"algebra", ctx.alg().name()},
                     {"rows", primality_json(rows)}};
    }

    //! Ends a subcommand early; ctx.results already holds the report.
    struct Stop {};

    inline MalcevCertificate require_malcev(Context& ctx, json& out) {
      auto search = obtain_malcev(ctx.alg(), ctx.cfg.budget);
      out["malcev"] = malcev_json(search);
      if (search.status == SearchStatus::none) {
        ctx.fail();
        ctx.results = out;
        throw Stop{};
      }
      if (search.status == SearchStatus::inconclusive) {
        ctx.undecided();
        ctx.results = out;
        throw Stop{};
      }
      return *search.certificate;
    }

    inline void cmd_malcev(Context& ctx) {
      json out{{"algebra", ctx.alg().name()}};
      ctx.results = out;
      auto search = obtain_malcev(ctx.alg(), ctx.cfg.budget);
      out["malcev"] = malcev_json(search);
      if (search.status == SearchStatus::none) {
        ctx.fail();
      } else if (search.status == SearchStatus::inconclusive) {
        ctx.undecided();
      } else {
        OpTable q = induced_table(ctx.alg(), search.certificate->term, 3);
        out["malcev"]["table"]    = table_json(q);
        out["malcev"]["verified"] = is_malcev_table(q);
      }
      ctx.results = out;
    }

    inline void cmd_cube(Context& ctx) {
      std::size_t const n = ctx.cfg.n != 0 ? ctx.cfg.n : 2;
      json              out{{"algebra", ctx.alg().name()}, {"n", n}};
      ctx.results             = out;
      MalcevCertificate q     = require_malcev(ctx, out);
      json              cubes = json::array();
      for (std::size_t i = 2; i <= n; ++i) {
        CubeTerm c   = build_cube_term(q, i);
        auto     bad = cube_identity_failure(ctx.alg(), c);
        json     j{{"n", i},
               {"arity", c.arity()},
               {"height", c.term.height()},
               {"height_bound", (i - 1) * build_cube_term(q, 2).term.height()},
               {"identities_hold", !bad.has_value()}};
        if (bad) {
          j["witness"] = {{"position", bad->position}, {"x", bad->x}, {"y", bad->y}};
          ctx.fail();
        }
        if (i == n) {
          j["term"] = term_or_null(c.term);
        }
        cubes.push_back(j);
      }
      out["cubes"] = cubes;
      ctx.results  = out;
    }

    inline void cmd_spn(Context& ctx) {
      auto v = check_supernilpotent(ctx.alg(), ctx.cfg.degree, ctx.cfg.budget);
      if (v.status == SpnStatus::fails) {
        ctx.fail();
      } else if (v.status == SpnStatus::inconclusive) {
        if (v.note == "no Mal'cev term exists") {
          ctx.fail();
        } else {
          ctx.undecided();
        }
      }
      json out = spn_json(v);
      if (v.witness) {
        // re-evaluate the witness from its reported term
        OpTable t = induced_table(ctx.alg().with_constants(),
                                  v.witness->polynomial_term, v.degree + 1);
        out["witness"]["reverified"]
            = t == v.witness->polynomial && cube_values(t, v.witness->a,
                                                        v.witness->b)
                                                    .back()
                                                == v.witness->rhs;
      }
      ctx.results = {{"algebra", ctx.alg().name()}, {"spn", out}};
    }

    inline void cmd_rewrite(Context& ctx) {
      RewriteOptions opt;
      opt.k          = ctx.cfg.k != 0 ? ctx.cfg.k : 2;
      opt.base_arity = ctx.cfg.base_arity != 0 ? ctx.cfg.base_arity : opt.k + 2;
      opt.epsilon    = ctx.cfg.epsilon != 0 ? ctx.cfg.epsilon
                                            : 1.0 / (2.0 * static_cast<double>(opt.k));
      opt.verify     = parse_verify(ctx.cfg.verify, ctx.cfg.seed);
      validate_rewrite_options(opt);

      Term        input = Term::var(1);
      std::size_t n     = ctx.cfg.n;
      if (!ctx.cfg.input_term.empty() == (ctx.cfg.chain != 0)) {
        throw Error("give exactly one of --input-term, --chain");
      }
      if (ctx.cfg.chain != 0) {
        input = left_chain(binary_symbol(ctx.alg(), ctx.cfg.op), ctx.cfg.chain);
        n     = ctx.cfg.chain;
      } else {
        input = parse_term(ctx.cfg.input_term, ctx.alg());
        if (n == 0) {
          n = std::max<std::size_t>(1, input.max_variable());
        }
      }
      json out{{"algebra", ctx.alg().name()}};
      ctx.results           = out;
      MalcevCertificate q   = require_malcev(ctx, out);
      CubeTerm const    qk  = build_cube_term(q, opt.k);
      CloneTable const  base = close_by_height(ctx.alg(), opt.base_arity,
                                               ctx.cfg.budget);
      if (!base.complete()) {
        out["note"] = "base clone exceeded the budget";
        ctx.results = out;
        ctx.undecided();
        return;
      }
      out["input"] = {{"n", n},
                      {"height", input.height()},
                      {"length", input.length()},
                      {"term", term_or_null(input)}};
      try {
        auto r         = rewrite_log_height(ctx.alg(), qk, input, n, base, opt);
        out["rewrite"] = rewrite_json(r, r.term.length() <= max_printed_length);
        if (!r.certificate.within_bound) {
          ctx.fail();
        }
      } catch (SemanticMismatch const& e) {
        out["mismatch"] = mismatch_json(e);
        ctx.fail();
      }
      ctx.results = out;
    }

    inline void cmd_decompose(Context& ctx) {
      std::size_t const degree = ctx.cfg.degree;
      OpTable const     f      = ctx.target(degree + 3);
      json out{{"algebra", ctx.alg().name()},
               {"degree", degree},
               {"target", table_json(f)}};
      ctx.results         = out;
      MalcevCertificate q = require_malcev(ctx, out);
      try {
        auto d               = decompose_generators(ctx.alg(), q, degree, f);
        out["decomposition"] = decomposition_json(d);
        out["verified"]      = {{"mode", "exhaustive"}, {"checked", f.size()}};
      } catch (SemanticMismatch const& e) {
        out["mismatch"] = mismatch_json(e);
        ctx.fail();
      }
      ctx.results = out;
    }

    inline void cmd_chain(Context& ctx) {
      std::size_t const k = ctx.cfg.k != 0 ? ctx.cfg.k : 2;
      json              out{{"algebra", ctx.alg().name()}, {"k", k}};
      ctx.results         = out;
      MalcevCertificate q = require_malcev(ctx, out);
      if (ctx.alg().universe_size() < 2) {
        throw Error("the chain needs at least two elements");
      }
      json rows = json::array();
      for (std::size_t i = 1; i <= k; ++i) {
        Term const    t   = malcev_chain(q, i);
        OpTable const tab = induced_table(ctx.alg(), t, 2 * i + 1);
        std::size_t   ess = essential_arity(tab);
        auto          bad = chain_parity_failure(ctx.alg(), t, i, 0, 1);
        json j{{"k", i},
               {"arity", 2 * i + 1},
               {"essential_arity", ess},
               {"height", t.height()},
               {"length", t.length()},
               {"parity_holds", !bad.has_value()}};
        if (bad) {
          j["parity_witness_l"] = *bad;
        }
        if (i == k) {
          j["term"] = term_or_null(t);
        }
        if (ess != 2 * i + 1 || bad) {
          ctx.fail();
        }
        rows.push_back(j);
      }
      out["chains"] = rows;
      ctx.results   = out;
    }

    inline void cmd_equiv(Context& ctx) {
      auto r = clone_equality(ctx.alg(0), ctx.alg(1), ctx.cfg.max_arity,
                              ctx.cfg.budget);
      if (r.verdict == EquivalenceVerdict::not_equivalent) {
        ctx.fail();
      } else if (r.verdict == EquivalenceVerdict::inconclusive) {
        ctx.undecided();
      }
      ctx.results = equivalence_json(r);
    }

    inline void cmd_demo_commutator(Context& ctx) {
      std::size_t const n   = ctx.cfg.n != 0 ? ctx.cfg.n : 5;
      json              rows = json::array();
      for (std::size_t i = 1; i <= n; ++i) {
        auto g = commutator_growth_demo(ctx.alg(0), ctx.alg(1), i,
                                        ctx.cfg.samples, ctx.cfg.seed);
        json j = commutator_json(g);
        bool const lengths_ok
            = g.len_commutator_signature == 2 * i - 1
              && g.len_expanded == (std::uint64_t{1} << (i + 2)) - 7;
        bool const exceeds = i < 2 || g.len_expanded > (std::uint64_t{1} << i);
        j["length_formulas_hold"] = lengths_ok;
        j["expanded_exceeds_2_pow_n"] = exceeds;
        if (!lengths_ok || !exceeds || !g.agree) {
          ctx.fail();
        }
        rows.push_back(j);
      }
      ctx.results = {{"group", ctx.alg(0).name()},
                     {"with_commutator", ctx.alg(1).name()},
                     {"rows", rows}};
    }

    struct Command {
      void (*fn)(Context&);
      std::size_t algebras;  // how many algebra arguments
      bool        enumerates;
    };

    inline std::map<std::string, Command> const& commands() {
      static std::map<std::string, Command> const table{
          {"info", {cmd_info, 1, false}},
          {"clone", {cmd_clone, 1, true}},
          {"seq", {cmd_seq, 1, true}},
          {"bounds", {cmd_bounds, 1, true}},
          {"sigma", {cmd_sigma, 1, false}},
          {"primal-synth", {cmd_primal_synth, 1, true}},
          {"primality", {cmd_primality, 1, true}},
          {"malcev", {cmd_malcev, 1, true}},
          {"cube", {cmd_cube, 1, true}},
          {"spn", {cmd_spn, 1, true}},
          {"rewrite", {cmd_rewrite, 1, true}},
          {"decompose", {cmd_decompose, 1, true}},
          {"chain", {cmd_chain, 1, true}},
          {"equiv", {cmd_equiv, 2, true}},
          {"demo commutator", {cmd_demo_commutator, 2, false}}};
      return table;
    }

    inline json config_json(RunConfig const& c) {
      json j{{"command", c.command},
             {"algebras", c.algebras},
             {"max_arity", c.max_arity},
             {"arity", c.arity},
             {"budget", c.budget},
             {"seed", c.seed},
             {"n", c.n},
             {"degree", c.degree},
             {"k", c.k},
             {"base_arity", c.base_arity},
             {"epsilon", c.epsilon},
             {"verify", c.verify},
             {"samples", c.samples},
             {"explodes", c.explodes}};
      auto opt = [&j](char const* key, std::string const& v) {
        if (!v.empty()) {
          j[key] = v;
        }
      };
      opt("target_table", c.target_table);
      opt("target_term", c.target_term);
      opt("target", c.target);
      opt("input_term", c.input_term);
      opt("op", c.op);
      if (c.chain != 0) {
        j["chain"] = c.chain;
      }
      return j;
    }

    inline char const* verdict_name(int code) {
      switch (code) {
        case ExitCode::pass:
          return "pass";
        case ExitCode::math_failure:
          return "fail";
        case ExitCode::input_error:
          return "input_error";
        default:
          return "inconclusive";
      }
    }
  }  // namespace detail

  //! Names accepted as RunConfig::command.
  inline std::vector<std::string> command_names() {
    std::vector<std::string> out;
    for (auto const& [name, cmd] : detail::commands()) {
      out.push_back(name);
    }
    return out;
  }

  //! Runs one subcommand. Never throws for bad input: errors become a report
  //! with exit code 2 and an "error" member.
  inline RunResult run(RunConfig const& cfg) {
    auto const start = std::chrono::steady_clock::now();
    RunResult  result;
    json&      report = result.report;
    report = {{"tool", "cloneworks"},
              {"version", version},
              {"command", cfg.command},
              {"config", detail::config_json(cfg)}};

    detail::Context ctx{cfg, {}};
    try {
      auto it = detail::commands().find(cfg.command);
      if (it == detail::commands().end()) {
        throw Error("unknown command '" + cfg.command + "'");
      }
      auto const&              cmd   = it->second;
      std::vector<std::string> specs = cfg.algebras;
      if (cfg.command == "demo commutator" && specs.empty()) {
        specs = {"builtin:a4-group", "builtin:a4-commutator"};
      }
      if (specs.size() != cmd.algebras) {
        throw Error("'" + cfg.command + "' takes "
                    + std::to_string(cmd.algebras) + " algebra argument(s)");
      }
      if (cfg.budget == 0) {
        throw Error("--budget must be positive");
      }
      if (cfg.max_arity == 0) {
        throw Error("--max-arity must be positive");
      }
      for (auto const& spec : specs) {
        if (cmd.enumerates && builtin_explodes(detail::builtin_name(spec))
            && !cfg.explodes) {
          throw Error("clone enumeration on '" + spec
                      + "' needs --i-know-this-explodes");
        }
        ctx.algebras.push_back(detail::load_algebra(spec));
      }
      cmd.fn(ctx);
      result.exit_code = ctx.exit_code;
    } catch (detail::Stop const&) {
      result.exit_code = ctx.exit_code;
    } catch (SemanticMismatch const& e) {
      report["error"]  = {{"kind", "semantic_mismatch"},
                          {"witness", mismatch_json(e)}};
      result.exit_code = ExitCode::math_failure;
    } catch (InvalidBasis const& e) {
      report["error"]  = {{"kind", "invalid_basis"}, {"message", e.what()}};
      result.exit_code = ExitCode::math_failure;
    } catch (BudgetExceeded const& e) {
      report["error"]  = {{"kind", "budget_exceeded"}, {"message", e.what()}};
      result.exit_code = ExitCode::inconclusive;
    } catch (ParseError const& e) {
      report["error"]  = {{"kind", "parse_error"},
                          {"line", e.line()},
                          {"message", e.what()}};
      result.exit_code = ExitCode::input_error;
    } catch (std::exception const& e) {
      report["error"]  = {{"kind", "input_error"}, {"message", e.what()}};
      result.exit_code = ExitCode::input_error;
    }
    report["results"]   = ctx.results;
    report["verdict"]   = detail::verdict_name(result.exit_code);
    report["exit_code"] = result.exit_code;
    if (cfg.timing) {
      std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
      report["wall_clock_seconds"] = dt.count();
    }
    return result;
  }

}  // namespace cloneworks

#endif  // CLONEWORKS_CLI_HPP_
