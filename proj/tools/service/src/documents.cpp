#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "entwined/error.hpp"
#include "entwined/io.hpp"
#include "entwined/service.hpp"

namespace entwined::service {

namespace {

class CatalogCache {
public:
  // Entries cover every irrep up to `built_to`; label matching is by exact dimension,
  // so a larger catalog serves smaller requests.
  std::vector<CatalogEntry> get(const std::string& algebra, std::size_t max_dim) {
    std::lock_guard lock(mutex_);
    auto& slot = slots_[algebra];
    if (slot.built_to < max_dim) {
      slot.entries = build_irrep_catalog_with_representatives(algebra, max_dim);
      slot.built_to = max_dim;
    }
    return slot.entries;
  }

private:
  struct Slot {
    std::size_t built_to = 0;
    std::vector<CatalogEntry> entries;
  };
  std::mutex mutex_;
  std::map<std::string, Slot> slots_;
};

CatalogCache& catalog_cache() {
  static CatalogCache cache;
  return cache;
}

std::size_t leading_dimension(const std::string& name) {
  std::size_t value = 0;
  const auto* end = name.data() + name.size();
  const auto [ptr, ec] = std::from_chars(name.data(), end, value);
  if (ec != std::errc{} || ptr == name.data() || value == 0) {
    throw Error(ErrorKind::UnknownName, "'" + name + "' is not an irrep name");
  }
  return value;
}

json weights_json(const GeneratorSet& rep) {
  return weights(rep, cartan_indices(rep.algebra_id));
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

bool is_scalar_array(const json& j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
}

void render(const json& j, const std::string& indent, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_primitive() || is_scalar_array(value) || value.empty()) {
        out << indent << key << ": ";
        render(value, "", out);
        out << '\n';
      } else {
        out << indent << key << ":\n";
        render(value, indent + "  ", out);
      }
    }
  } else if (j.is_array() && !is_scalar_array(j)) {
    for (const auto& e : j) {
      if (e.is_object()) {
        std::ostringstream inner;
        render(e, indent + "  ", inner);
        auto text = inner.str();
        text.replace(indent.size(), 2, "- ");
        out << text;
      } else {
        out << indent << "- ";
        render(e, "", out);
        out << '\n';
      }
    }
  } else if (j.is_array()) {
    out << '[';
    for (std::size_t i = 0; i < j.size(); ++i) {
      out << (i ? ", " : "");
      render(j[i], "", out);
    }
    out << ']';
  } else if (j.is_number_float()) {
    out << format_number(j.get<double>());
  } else if (j.is_string()) {
    out << j.get<std::string>();
  } else {
    out << j.dump();
  }
}

} // namespace

json algebra_info(const GeneratorSet& rep) {
  const auto algebra = canonical_algebra_id(rep.algebra_id);
  const int n = su_order(algebra);
  json out = {{"algebra", algebra},
              {"rank", n - 1},
              {"d", rep.d()},
              {"d_r", rep.d_r()},
              {"trace_index", rep.trace_index},
              {"c2", casimir_scalar(quadratic_casimir(rep)).value}};
  if (n >= 3) {
    out["c3"] = casimir_scalar(cubic_casimir(rep, invariant_d_tensor(algebra))).value;
  }
  out["weights"] = weights_json(rep);
  return out;
}

json scenario_info(const Scenario& scenario) {
  json out = algebra_info(scenario.representation());
  out["scenario"] = scenario.name();
  out["questions"] = scenario.question_names();
  out["warnings"] = scenario.warnings();
  return out;
}

json verify_document(const GeneratorSet& rep) {
  json out = io::to_json(verify_generator_set(rep));
  out["algebra"] = canonical_algebra_id(rep.algebra_id);
  out["d_r"] = rep.d_r();
  if (rep.trace_index > 1e-10) {
    const auto f = structure_constants(rep);
    out["jacobi_residual"] = jacobi_residual(f);
    out["antisymmetry_residual"] = antisymmetry_residual(f);
  }
  return out;
}

GeneratorSet irrep_by_name(const std::string& algebra_tag, const std::string& name) {
  const auto algebra = canonical_algebra_id(algebra_tag);
  const int n = su_order(algebra);
  if (n == 2) {
    const auto k = leading_dimension(name);
    if (std::to_string(k) != name) {
      throw Error(ErrorKind::UnknownName, "su(2) irreps are named by dimension, got '" + name + "'");
    }
    return su2_spin_irrep(k);
  }
  if (n == 3) {
    const auto entries = catalog_cache().get(algebra, leading_dimension(name));
    for (const auto& e : entries) {
      if (e.label.name == name) {
        return e.representative;
      }
    }
    throw Error(ErrorKind::UnknownName, "no su(3) irrep named '" + name + "'");
  }
  const auto fund = su_fundamental(n);
  if (name == std::to_string(n)) {
    return fund;
  }
  if (name == std::to_string(n) + "bar") {
    return conjugate_rep(fund);
  }
  if (name == std::to_string(n * n - 1)) {
    return adjoint_rep(structure_constants(fund));
  }
  throw Error(ErrorKind::UnknownName, "no " + algebra + " irrep named '" + name + "'");
}

json decompose_document(const std::string& algebra_tag, const std::vector<std::string>& factors,
                        bool with_isometries) {
  if (factors.empty()) {
    throw Error(ErrorKind::ValidationError, "decompose needs at least one factor", "/factors");
  }
  const auto algebra = canonical_algebra_id(algebra_tag);
  GeneratorSet rep = irrep_by_name(algebra, factors.front());
  for (std::size_t i = 1; i < factors.size(); ++i) {
    rep = tensor_rep(rep, irrep_by_name(algebra, factors[i]));
  }
  const auto blocks = irreducible_blocks(rep);
  std::size_t largest = 1;
  for (const auto& b : blocks) {
    largest = std::max(largest, static_cast<std::size_t>(b.cols()));
  }
  std::vector<IrrepLabel> catalog;
  for (auto& e : catalog_cache().get(algebra, largest)) {
    catalog.push_back(std::move(e.label));
  }
  const auto result = label_blocks(rep, blocks, catalog);

  std::string summary;
  for (const auto& part : result.parts) {
    for (std::size_t m = 0; m < part.multiplicity; ++m) {
      summary += (summary.empty() ? "" : " + ") + part.label.name;
    }
  }
  return {{"algebra", algebra},
          {"factors", factors},
          {"dimension", rep.d_r()},
          {"parts", io::to_json(result, with_isometries)},
          {"residual", result.residual},
          {"summary", summary}};
}

QuestionRef parse_question_arg(const std::string& text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
      return text;
    }
    values.push_back(v);
    pos = comma + 1;
  }
  return RealVector(Eigen::Map<const RealVector>(values.data(), static_cast<Eigen::Index>(values.size())));
}

json state_summary(const Session& session) {
  json expectations = json::object();
  for (const auto& name : session.scenario().question_names()) {
    expectations[name] = expectation(session.state(), session.scenario().resolve(name));
  }
  return {{"dim", session.state().dim()},
          {"amplitudes", io::to_json(session.state().amplitudes())},
          {"expectations", expectations}};
}

json session_document(const Session& session) {
  return {{"id", session.id()},
          {"scenario", session.scenario().name()},
          {"seed", session.seed()},
          {"questions", session.scenario().question_names()},
          {"state_summary", state_summary(session)},
          {"history", io::history_to_json(session.history())}};
}

json peek_document(const Session& session, const std::vector<QuestionRef>& questions) {
  if (questions.size() == 1) {
    return {{"question", io::to_json(questions.front())},
            {"distribution", io::to_json(session.peek(questions.front()))}};
  }
  json refs = json::array();
  for (const auto& q : questions) {
    refs.push_back(io::to_json(q));
  }
  return {{"questions", refs}, {"distribution", io::to_json(session.joint_peek(questions))}};
}

json ask_document(const AskRecord& record, const Session& session) {
  return {{"outcome", record.outcome},
          {"distribution_before", io::to_json(record.distribution_before)},
          {"state_summary", state_summary(session)},
          {"seed", record.event.seed},
          {"event", io::to_json(record.event)}};
}

std::string render_human(const json& document) {
  std::ostringstream out;
  if (document.is_primitive()) {
    render(document, "", out);
    out << '\n';
  } else {
    render(document, "", out);
  }
  return out.str();
}

} // namespace entwined::service
