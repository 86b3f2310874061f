#include "histq/io/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

namespace histq::io {

namespace {

using nlohmann::json;
using scenario::ConditionalResult;
using scenario::InferenceSummary;
using scenario::NoncontextualitySummary;
using scenario::QueryResult;
using scenario::ResultSet;

json matrix_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back({round12(m(r, c).real()), round12(m(r, c).imag())});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> entry_slots(const ProbabilityEntry& entry) {
  std::vector<std::string> slots;
  for (const auto& tags : entry.slot_tags) {
    std::string s;
    for (std::size_t i = 0; i < tags.size(); ++i) {
      if (i > 0) s += "&";
      s += tags[i];
    }
    slots.push_back(std::move(s));
  }
  return slots;
}

json rounded(const std::vector<double>& values) {
  json out = json::array();
  for (double v : values) out.push_back(round12(v));
  return out;
}

struct JsonPayload {
  json& out;

  void operator()(const std::monostate&) const {}
  void operator()(const ConsistencyReport& r) const {
    out["verdict"] = to_string(r.verdict);
    out["max_off_diagonal"] = round12(r.max_off_diagonal);
    out["max_diagonal"] = round12(r.max_diagonal);
    out["tolerance"] = round12(r.tol);
    if (r.worst_pair.first >= 0) {
      out["worst_pair"] = {r.worst_pair.first, r.worst_pair.second};
    }
    out["gram"] = matrix_json(r.gram);
  }
  void operator()(const ProbabilityTable& t) const {
    out["times"] = t.times;
    out["normative"] = t.normative;
    json table = json::array();
    for (const auto& entry : t.entries) {
      table.push_back(
          {{"history", entry_slots(entry)}, {"probability", round12(entry.probability)}});
    }
    out["table"] = std::move(table);
    out["total"] = round12(t.total());
  }
  void operator()(const ConditionalResult& c) const {
    out["given"] = c.given;
    out["target"] = c.target;
    out["probability"] = round12(c.probability);
  }
  void operator()(const POVM& p) const {
    json elements = json::array();
    for (int k = 0; k < p.size(); ++k) {
      elements.push_back({{"outcome", p.labels[k]}, {"matrix", matrix_json(p.elements[k])}});
    }
    out["elements"] = std::move(elements);
  }
  void operator()(const InferenceSummary& s) const {
    out["model"] = s.model;
    out["initial"] = s.initial;
    out["verdict"] = to_string(s.verdict);
    json outcomes = json::array();
    for (const auto& o : s.outcomes) {
      json entry;
      entry["outcome"] = o.outcome;
      entry["probability"] = round12(o.outcome_probability);
      entry["reachable"] = o.reachable;
      entry["eigenvalues"] = rounded(o.eigenvalues);
      if (o.reachable) {
        entry["prior"] = rounded(o.prior_distribution);
      } else {
        entry["prior"] = "undefined (outcome unreachable)";
      }
      entry["certain"] = o.certain;
      if (o.certain) entry["certain_index"] = o.certain_index;
      json projectors = json::array();
      for (const auto& xi : o.inference_pdi.projectors) {
        projectors.push_back(matrix_json(xi.matrix));
      }
      entry["projectors"] = std::move(projectors);
      outcomes.push_back(std::move(entry));
    }
    out["outcomes"] = std::move(outcomes);
  }
  void operator()(const NoncontextualitySummary& s) const {
    out["first"] = s.first;
    out["second"] = s.second;
    out["groups"] = s.report.group_labels;
    out["pass"] = s.report.pass;
    out["max_difference"] = round12(s.report.max_difference);
    json probes = json::array();
    for (std::size_t i = 0; i < s.report.probes.size(); ++i) {
      const auto& p = s.report.probes[i];
      probes.push_back({{"probe", s.probe_names[i]},
                        {"first", rounded(p.distribution_first)},
                        {"second", rounded(p.distribution_second)},
                        {"reference", rounded(p.distribution_born)},
                        {"max_difference", round12(p.max_difference)}});
    }
    out["probes"] = std::move(probes);
  }
};

struct CsvPayload {
  std::ostringstream& out;
  const QueryResult& result;

  void row(const std::string& key, const std::string& value,
           const std::string& extra = "") const {
    out << result.id << ',' << result.kind << ',' << key << ',' << value << ',' << extra
        << '\n';
  }
  void row(const std::string& key, double value) const {
    row(key, format_double(value));
  }

  void operator()(const std::monostate&) const {}
  void operator()(const ConsistencyReport& r) const {
    row("verdict", to_string(r.verdict));
    row("max_off_diagonal", r.max_off_diagonal);
    row("max_diagonal", r.max_diagonal);
  }
  void operator()(const ProbabilityTable& t) const {
    for (const auto& entry : t.entries) row(entry.label(), entry.probability);
    row("total", t.total());
  }
  void operator()(const ConditionalResult& c) const {
    row("Pr(" + c.target + " | " + c.given + ")", c.probability);
  }
  void operator()(const POVM& p) const {
    for (int k = 0; k < p.size(); ++k) {
      const auto& m = p.elements[k];
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
          row(p.labels[k] + "[" + std::to_string(r) + "][" + std::to_string(c) + "]",
              format_double(m(r, c).real()), format_double(m(r, c).imag()));
        }
      }
    }
  }
  void operator()(const InferenceSummary& s) const {
    for (const auto& o : s.outcomes) {
      row("Pr(" + o.outcome + ")", o.outcome_probability);
      if (!o.reachable) {
        row("prior(" + o.outcome + ")", "undefined (outcome unreachable)");
        continue;
      }
      for (std::size_t j = 0; j < o.prior_distribution.size(); ++j) {
        row("prior(" + o.outcome + ")[" + std::to_string(j) + "]",
            format_double(o.prior_distribution[j]),
            "eigenvalue=" + format_double(o.eigenvalues[j]));
      }
    }
  }
  void operator()(const NoncontextualitySummary& s) const {
    row("pass", s.report.pass ? "true" : "false");
    row("max_difference", s.report.max_difference);
    for (std::size_t i = 0; i < s.report.probes.size(); ++i) {
      const auto& p = s.report.probes[i];
      for (std::size_t g = 0; g < s.report.group_labels.size(); ++g) {
        row(s.probe_names[i] + ":" + s.report.group_labels[g] + ":first",
            p.distribution_first[g]);
        row(s.probe_names[i] + ":" + s.report.group_labels[g] + ":second",
            p.distribution_second[g]);
      }
    }
  }
};

struct TablePayload {
  std::ostringstream& out;
  bool color;

  std::string emph(const std::string& text) const {
    return color ? "\033[1m" + text + "\033[0m" : text;
  }
  std::string good(const std::string& text) const {
    return color ? "\033[32m" + text + "\033[0m" : text;
  }
  std::string bad(const std::string& text) const {
    return color ? "\033[31m" + text + "\033[0m" : text;
  }

  void matrix(const ComplexMatrix& m, const std::string& indent) const {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      out << indent << "[";
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        if (c > 0) out << ", ";
        const Complex v = m(r, c);
        out << format_double(v.real());
        if (v.imag() != 0.0) out << (v.imag() > 0 ? "+" : "") << format_double(v.imag()) << "i";
      }
      out << "]\n";
    }
  }

  void operator()(const std::monostate&) const {}
  void operator()(const ConsistencyReport& r) const {
    const std::string verdict = to_string(r.verdict);
    out << "  verdict: "
        << (r.consistent() ? good(verdict) : bad(verdict)) << "\n"
        << "  max off-diagonal: " << format_double(r.max_off_diagonal)
        << "  max diagonal: " << format_double(r.max_diagonal) << "\n";
  }
  void operator()(const ProbabilityTable& t) const {
    for (const auto& entry : t.entries) {
      out << "  Pr(" << entry.label() << ") = " << format_double(entry.probability) << "\n";
    }
    out << "  total = " << format_double(t.total()) << "\n";
  }
  void operator()(const ConditionalResult& c) const {
    out << "  Pr(" << c.target << " | " << c.given
        << ") = " << format_double(c.probability) << "\n";
  }
  void operator()(const POVM& p) const {
    for (int k = 0; k < p.size(); ++k) {
      out << "  element " << p.labels[k] << ":\n";
      matrix(p.elements[k], "    ");
    }
  }
  void operator()(const InferenceSummary& s) const {
    out << "  family verdict: " << to_string(s.verdict) << "\n";
    for (const auto& o : s.outcomes) {
      out << "  outcome " << o.outcome
          << ": Pr = " << format_double(o.outcome_probability);
      if (!o.reachable) {
        out << "  prior: undefined (outcome unreachable)\n";
        continue;
      }
      out << "\n";
      for (std::size_t j = 0; j < o.prior_distribution.size(); ++j) {
        out << "    prior property " << j << " (eigenvalue "
            << format_double(o.eigenvalues[j])
            << "): " << format_double(o.prior_distribution[j]);
        if (o.certain && static_cast<int>(j) == o.certain_index) out << "  " << emph("[certain]");
        out << "\n";
      }
    }
  }
  void operator()(const NoncontextualitySummary& s) const {
    out << "  settings " << s.first << " vs " << s.second << ": "
        << (s.report.pass ? good("PASS") : bad("FAIL"))
        << "  (max difference " << format_double(s.report.max_difference) << ")\n";
    for (std::size_t i = 0; i < s.report.probes.size(); ++i) {
      const auto& p = s.report.probes[i];
      out << "  probe " << s.probe_names[i] << ":";
      for (std::size_t g = 0; g < s.report.group_labels.size(); ++g) {
        out << "  Pr(" << s.report.group_labels[g]
            << ") = " << format_double(p.distribution_first[g]);
      }
      out << "\n";
    }
  }
};

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  // Avoid the signed zero so equal values always print identically.
  if (buf[0] == '-' && std::strtod(buf, nullptr) == 0.0) return buf + 1;
  return buf;
}

double round12(double value) {
  return std::strtod(format_double(value).c_str(), nullptr);
}

std::string to_json(const ResultSet& results) {
  json root;
  root["origin"] = results.origin;
  json entries = json::array();
  for (const auto& result : results.results) {
    json entry;
    entry["query_id"] = result.id;
    entry["kind"] = result.kind;
    entry["target"] = result.target;
    if (!result.ok()) {
      entry["error"] = result.error;
    } else {
      std::visit(JsonPayload{entry}, result.payload);
    }
    entries.push_back(std::move(entry));
  }
  root["results"] = std::move(entries);
  return root.dump(2) + "\n";
}

std::string to_csv(const ResultSet& results) {
  std::ostringstream out;
  out << "query_id,kind,key,value,extra\n";
  for (const auto& result : results.results) {
    if (!result.ok()) {
      out << result.id << ',' << result.kind << ",error," << '"' << result.error << '"'
          << ",\n";
      continue;
    }
    std::visit(CsvPayload{out, result}, result.payload);
  }
  return out.str();
}

std::string to_table(const ResultSet& results, bool color) {
  std::ostringstream out;
  TablePayload payload{out, color};
  for (const auto& result : results.results) {
    out << payload.emph(result.id + " " + result.kind) << " (" << result.target << ")\n";
    if (!result.ok()) {
      out << "  " << payload.bad("error: " + result.error) << "\n";
    } else {
      std::visit(payload, result.payload);
    }
  }
  return out.str();
}

}  // namespace histq::io
