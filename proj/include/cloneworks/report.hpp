// cloneworks - term operations of finite algebras
//
// JSON encodings of engine results and the json/csv/text emitters.
//
// Integers that can exceed 64 bits (the right-hand sides of the general
// bounds, counts of all functions) are written as decimal strings.

#ifndef CLONEWORKS_REPORT_HPP_
#define CLONEWORKS_REPORT_HPP_

#include <cstddef>  // for size_t
#include <sstream>  // for ostringstream
#include <string>   // for string
#include <vector>   // for vector

#include <nlohmann/json.hpp>

#include "algebra.hpp"
#include "bounds.hpp"
#include "malcev.hpp"
#include "primal.hpp"
#include "rewrite.hpp"
#include "term.hpp"

namespace cloneworks {

  using json = nlohmann::ordered_json;

  inline constexpr char const* version = "0.1.0";

  inline json elements_json(std::span<Element const> v) {
    json out = json::array();
    for (auto e : v) {
      out.push_back(static_cast<unsigned>(e));
    }
    return out;
  }

  inline json table_json(OpTable const& t) {
    return elements_json(t.values());
  }

  inline json algebra_json(FiniteAlgebra const& alg) {
    json ops = json::array();
    for (auto const& op : alg.operations()) {
      ops.push_back({{"name", op.symbol.name}, {"arity", op.symbol.arity}});
    }
    json des = json::object();
    for (auto const& [role, target] : alg.designations()) {
      des[role] = target;
    }
    return {{"name", alg.name()},
            {"size", alg.universe_size()},
            {"symbols", alg.symbol_count()},
            {"max_arity", alg.max_arity()},
            {"operations", ops},
            {"designations", des}};
  }

  inline json sequence_row_json(std::string const& algebra,
                                SequenceRow const& row) {
    json j{{"algebra", algebra}, {"n", row.n}, {"complete", row.complete}};
    if (row.complete) {
      j["fs"]  = row.fs;
      j["ht"]  = row.ht;
      j["len"] = row.len;
    } else {
      j["fs"]       = nullptr;
      j["ht"]       = nullptr;
      j["len"]      = nullptr;
      j["explored"] = row.explored;
      j["status"]   = "budget exceeded";
    }
    return j;
  }

  inline json bound_check_json(BoundCheck const& c) {
    return {{"name", c.name},
            {"lhs", c.lhs.str()},
            {"rhs", c.rhs.str()},
            {"relation", c.strict ? "<" : "<="},
            {"pass", c.pass},
            {"implied", c.implied},
            {"slack", c.slack().str()}};
  }

  inline json bounds_json(BoundsReport const& r) {
    json rows = json::array();
    for (auto const& row : r.rows) {
      json j      = sequence_row_json(r.algebra, row.seq);
      json checks = json::array();
      for (auto const& c : row.checks) {
        checks.push_back(bound_check_json(c));
      }
      j["bounds"] = checks;
      rows.push_back(j);
    }
    return {{"algebra", r.algebra},
            {"r", r.symbol_count},
            {"max_arity", r.max_arity},
            {"rows", rows}};
  }

  inline char const* to_string(EquivalenceVerdict v) {
    switch (v) {
      case EquivalenceVerdict::equivalent:
        return "equivalent";
      case EquivalenceVerdict::not_equivalent:
        return "not_equivalent";
      default:
        return "inconclusive";
    }
  }

  inline json optional_double(std::optional<double> const& v) {
    return v ? json(*v) : json(nullptr);
  }

  inline json equivalence_json(EquivalenceReport const& r) {
    json rows = json::array();
    for (auto const& row : r.rows) {
      json j{{"n", row.n},
             {"complete", row.complete},
             {"equal", row.equal},
             {"only_in_a", row.only_in_a},
             {"only_in_b", row.only_in_b},
             {"a", sequence_row_json(r.algebra_a, row.a)},
             {"b", sequence_row_json(r.algebra_b, row.b)}};
      if (row.witness) {
        j["witness"] = {{"side", std::string(1, row.witness->side)},
                        {"table", table_json(row.witness->table)},
                        {"term", print_term(row.witness->term)},
                        {"essential_arity", row.witness->essential_arity}};
      }
      if (row.len_transfer_holds) {
        j["len_transfer_holds"] = *row.len_transfer_holds;
      }
      rows.push_back(j);
    }
    return {{"algebra_a", r.algebra_a},
            {"algebra_b", r.algebra_b},
            {"verdict", to_string(r.verdict)},
            {"first_difference",
             r.first_difference ? json(*r.first_difference) : json(nullptr)},
            {"c1", optional_double(r.c1)},
            {"c2", optional_double(r.c2)},
            {"d", optional_double(r.d)},
            {"rows", rows}};
  }

  inline char const* to_string(PrimalityStatus s) {
    switch (s) {
      case PrimalityStatus::primal:
        return "primal";
      case PrimalityStatus::not_primal:
        return "not_primal";
      default:
        return "inconclusive";
    }
  }

  inline json primality_json(std::vector<PrimalityRow> const& rows) {
    json out = json::array();
    for (auto const& r : rows) {
      out.push_back({{"n", r.n},
                     {"status", to_string(r.status)},
                     {"fs", r.fs},
                     {"all_functions", r.all_functions.str()}});
    }
    return out;
  }

  inline char const* to_string(SearchStatus s) {
    switch (s) {
      case SearchStatus::found:
        return "found";
      case SearchStatus::none:
        return "none";
      default:
        return "inconclusive";
    }
  }

  inline json malcev_json(MalcevSearch const& s) {
    json j{{"status", to_string(s.status)},
           {"clone_size", s.clone_size},
           {"complete", s.complete}};
    if (s.certificate) {
      j["term"]   = print_term(s.certificate->term);
      j["height"] = s.certificate->height;
    }
    return j;
  }

  inline char const* to_string(SpnStatus s) {
    switch (s) {
      case SpnStatus::holds:
        return "holds";
      case SpnStatus::fails:
        return "fails";
      default:
        return "inconclusive";
    }
  }

  inline json spn_json(SpnVerdict const& v) {
    json j{{"degree", v.degree},
           {"status", to_string(v.status)},
           {"polynomial_operations", v.polynomial_operations},
           {"instances_checked", v.instances_checked},
           {"complete_enumeration", v.complete_enumeration}};
    if (v.malcev) {
      j["malcev_term"] = print_term(v.malcev->term);
    }
    if (v.cube) {
      j["cube_arity"]  = v.cube->arity();
      j["cube_height"] = v.cube->term.height();
    }
    if (v.witness) {
      auto const& w = *v.witness;
      j["witness"]  = {{"polynomial_table", table_json(w.polynomial)},
                       {"polynomial_term", print_term(w.polynomial_term)},
                       {"a", elements_json(w.a)},
                       {"b", elements_json(w.b)},
                       {"cube_arguments", elements_json(w.cube_arguments)},
                       {"lhs", w.lhs},
                       {"rhs", w.rhs}};
    }
    if (!v.note.empty()) {
      j["note"] = v.note;
    }
    return j;
  }

  inline char const* to_string(VerifyMode m) {
    switch (m) {
      case VerifyMode::exhaustive:
        return "exhaustive";
      case VerifyMode::sample:
        return "sample";
      default:
        return "none";
    }
  }

  inline json rewrite_json(RewriteResult const& r, bool include_term) {
    auto const& c = r.certificate;
    json        j{{"n", c.n},
           {"k", c.k},
           {"base_arity", c.base_arity},
           {"epsilon", c.epsilon},
           {"c", c.c},
           {"input_height", c.input_height},
           {"output_height", c.output_height},
           {"output_length", c.output_length},
           {"cube_height", c.cube_height},
           {"base_height", c.base_height},
           {"bound", c.bound},
           {"within_bound", c.within_bound},
           {"patterns", c.patterns},
           {"recursion_depth", c.recursion_depth},
           {"verification",
            {{"mode", to_string(c.verification.mode)},
             {"checked", c.verification.checked}}}};
    if (include_term) {
      j["term"] = print_term(r.term);
    }
    return j;
  }

  //! A SemanticMismatch as a witness object.
  inline json mismatch_json(SemanticMismatch const& e) {
    return {{"message", e.what()},
            {"assignment", elements_json(e.assignment())},
            {"expected", e.expected()},
            {"actual", e.actual()}};
  }

  inline json decomposition_json(Decomposition const& d) {
    json leaves = json::array();
    for (auto const& op : d.generators.operations()) {
      leaves.push_back({{"name", op.symbol.name},
                        {"arity", op.symbol.arity},
                        {"table", table_json(op.table)}});
    }
    return {{"term", print_term(d.term)},
            {"height", d.term.height()},
            {"length", d.term.length()},
            {"leaves", d.leaves},
            {"max_leaf_arity", d.max_leaf_arity},
            {"cube_applications", d.cube_applications},
            {"operations", leaves}};
  }

  inline json commutator_json(CommutatorGrowth const& g) {
    return {{"n", g.n},
            {"len_expanded", g.len_expanded},
            {"len_commutator_signature", g.len_commutator_signature},
            {"height_expanded", g.height_expanded},
            {"height_commutator", g.height_commutator},
            {"samples", g.samples},
            {"agree", g.agree}};
  }

  ////////////////////////////////////////////////////////////////////////
  // Emitters
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline std::string scalar_text(json const& v) {
      if (v.is_string()) {
        return v.get<std::string>();
      }
      return v.dump();
    }

    inline bool is_flat_array(json const& v) {
      if (!v.is_array()) {
        return false;
      }
      for (auto const& x : v) {
        if (x.is_object() || x.is_array()) {
          return false;
        }
      }
      return true;
    }

    inline void text_into(json const& v, std::string const& indent,
                          std::ostringstream& out) {
      if (v.is_object()) {
        for (auto const& [key, val] : v.items()) {
          if (val.is_object() || (val.is_array() && !is_flat_array(val))) {
            out << indent << key << ":\n";
            text_into(val, indent + "  ", out);
          } else if (val.is_array()) {
            out << indent << key << ": ";
            for (std::size_t i = 0; i < val.size(); ++i) {
              out << (i == 0 ? "" : " ") << scalar_text(val[i]);
            }
            out << "\n";
          } else {
            out << indent << key << ": " << scalar_text(val) << "\n";
          }
        }
      } else if (v.is_array()) {
        std::size_t i = 0;
        for (auto const& x : v) {
          out << indent << "- [" << i++ << "]\n";
          text_into(x, indent + "  ", out);
        }
      } else {
        out << indent << scalar_text(v) << "\n";
      }
    }

    inline std::string csv_cell(json const& v) {
      if (v.is_null()) {
        return "";
      }
      return scalar_text(v);
    }
  }  // namespace detail

  enum class Format { json, csv, text };

  inline Format parse_format(std::string const& s) {
    if (s == "json") {
      return Format::json;
    }
    if (s == "csv") {
      return Format::csv;
    }
    if (s == "text") {
      return Format::text;
    }
    throw Error("unknown format '" + s + "' (json, csv, text)");
  }

  //! Render a report. CSV exists for the row-shaped commands only (seq,
  //! bounds, primality); other commands throw.
  inline std::string emit(json const& report, Format format) {
    switch (format) {
      case Format::json:
        return report.dump(2) + "\n";
      case Format::text: {
        std::ostringstream out;
        detail::text_into(report, "", out);
        return out.str();
      }
      case Format::csv: {
        std::string const  cmd = report.value("command", "");
        std::ostringstream out;
        auto const&        results = report.at("results");
        if (cmd == "seq") {
          out << "n,fs,ht,len\n";
          for (auto const& row : results.at("rows")) {
            out << row.at("n").dump() << "," << detail::csv_cell(row.at("fs"))
                << "," << detail::csv_cell(row.at("ht")) << ","
                << detail::csv_cell(row.at("len")) << "\n";
          }
        } else if (cmd == "bounds") {
          out << "n,fs,ht,len,check,lhs,rhs,pass\n";
          for (auto const& row : results.at("rows")) {
            for (auto const& c : row.at("bounds")) {
              out << row.at("n").dump() << "," << detail::csv_cell(row.at("fs"))
                  << "," << detail::csv_cell(row.at("ht")) << ","
                  << detail::csv_cell(row.at("len")) << ","
                  << c.at("name").get<std::string>() << ","
                  << c.at("lhs").get<std::string>() << ","
                  << c.at("rhs").get<std::string>() << ","
                  << (c.at("pass").get<bool>() ? "true" : "false") << "\n";
            }
          }
        } else if (cmd == "primality") {
          out << "n,status,fs,all_functions\n";
          for (auto const& row : results.at("rows")) {
            out << row.at("n").dump() << ","
                << row.at("status").get<std::string>() << ","
                << row.at("fs").dump() << ","
                << row.at("all_functions").get<std::string>() << "\n";
          }
        } else {
          throw Error("csv output is available for seq, bounds and primality");
        }
        return out.str();
      }
    }
    return {};
  }

}  // namespace cloneworks

#endif  // CLONEWORKS_REPORT_HPP_
