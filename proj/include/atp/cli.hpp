#pragma once

// Command implementations behind the `atp` executable. Each takes the spec
// text and returns the text for stdout plus an exit code:
// 0 success, 1 mathematical failure, 2 input error.

#include <json.hpp>
#include <sstream>
#include <string>

#include "atp/cohomology.hpp"
#include "atp/gallery.hpp"
#include "atp/spec_file.hpp"

namespace atp::cli {

enum ExitCode { ok = 0, math_failure = 1, input_error = 2 };

struct CommandResult {
  int exit_code = ok;
  std::string out;
  std::string err;
};

/// Runs `body`, mapping library errors to exit codes.
template <class F>
CommandResult guarded(F&& body) {
  CommandResult r;
  try {
    body(r);
  } catch (const InputError& e) {
    r.exit_code = input_error;
    r.err += std::string("error: ") + e.what() + "\n";
  } catch (const MathError& e) {
    r.exit_code = math_failure;
    r.err += std::string("error: ") + e.what() + "\n";
  }
  return r;
}

inline nlohmann::ordered_json tensor_json(const GradedTensor& t) {
  const Chart& chart = *t.chart();
  nlohmann::ordered_json j;
  j["type"] = t.degree() == 0 ? "scalar" : kind_name(t.kind());
  j["degree"] = t.degree();
  j["printed"] = to_string(t);
  auto comps = nlohmann::ordered_json::array();
  for (const auto& [key, c] : t.components()) {
    auto idx = nlohmann::ordered_json::array();
    for (std::size_t i : key.elements()) idx.push_back(chart.coordinates()[i]);
    comps.push_back({{"indices", idx}, {"coefficient", to_string(c, chart)}});
  }
  j["components"] = comps;
  return j;
}

inline CommandResult cmd_verify(const std::string& text) {
  return guarded([&](CommandResult& r) {
    ManifoldSpec spec = parse_manifold_spec(text);
    AxiomReport report = verify_structure(spec.context());
    for (Axiom a : all_axioms) {
      const AxiomResult& res = report[a];
      r.out += std::string(axiom_name(a)) + ": ";
      r.out += res.passed() ? "PASS\n" : "FAIL, residual = " + to_string(res.residual) + "\n";
    }
    r.exit_code = report.all_passed() ? ok : math_failure;
  });
}

inline const char* const bracket_kinds[] = {"schouten", "koszul", "twisted", "lie", "hamiltonian"};

inline CommandResult cmd_bracket(const std::string& text, const std::string& kind, const std::string& lhs,
                                 const std::string& rhs, bool json) {
  return guarded([&](CommandResult& r) {
    ManifoldSpec spec = parse_manifold_spec(text);
    GradedTensor a = parse_expression(spec.scope, lhs);
    GradedTensor b = parse_expression(spec.scope, rhs);
    auto ctx = [&] { return spec.context(); };
    auto need = [](const GradedTensor& t, std::size_t degree, TensorKind k, const char* what) {
      if (t.degree() != degree || (degree != 0 && t.kind() != k))
        throw DegreeError(std::string("bracket operands must be ") + what);
    };
    GradedTensor result(spec.chart(), TensorKind::form, 0);
    if (kind == "schouten") {
      result = schouten_bracket(a, b);
    } else if (kind == "koszul" || kind == "twisted") {
      need(a, 1, TensorKind::form, "1-forms");
      need(b, 1, TensorKind::form, "1-forms");
      result = kind == "koszul" ? koszul_bracket(ctx(), a, b) : twisted_bracket(ctx(), a, b);
    } else if (kind == "lie") {
      need(a, 1, TensorKind::multivector, "vector fields");
      need(b, 1, TensorKind::multivector, "vector fields");
      result = lie_bracket(a, b);
    } else if (kind == "hamiltonian") {
      need(a, 0, TensorKind::form, "functions");
      need(b, 0, TensorKind::form, "functions");
      result = GradedTensor::scalar(hamiltonian_bracket(ctx(), a.as_scalar(), b.as_scalar()));
    } else {
      throw InputError("unknown bracket kind '" + kind + "'");
    }
    if (json) {
      nlohmann::ordered_json j{{"kind", kind}};
      j.update(tensor_json(result));
      r.out = j.dump(2) + "\n";
    } else {
      r.out = to_string(result) + "\n";
    }
  });
}

inline CommandResult cmd_differential(const std::string& text, const std::string& expr, bool json) {
  return guarded([&](CommandResult& r) {
    ManifoldSpec spec = parse_manifold_spec(text);
    GradedTensor v = parse_expression(spec.scope, expr);
    AtpStructure s(spec.context());
    GradedTensor dv = differential(s, v);
    r.out = json ? tensor_json(dv).dump(2) + "\n" : to_string(dv) + "\n";
  });
}

inline CommandResult cmd_cohomology(const std::string& text, std::size_t max_level, std::size_t degree, bool json,
                                    std::size_t slack = 1) {
  return guarded([&](CommandResult& r) {
    ManifoldSpec spec = parse_manifold_spec(text);
    AtpStructure s(spec.context());
    CohomologyReport report = truncated_cohomology(s, max_level, degree, slack);
    if (json) {
      nlohmann::ordered_json j = nlohmann::ordered_json::object();
      for (const LevelReport& l : report.levels) {
        auto basis = nlohmann::ordered_json::array();
        for (const auto& t : l.representatives) basis.push_back(to_string(t));
        j[std::to_string(l.level)] = {
            {"ker", l.kernel_dim}, {"im", l.image_dim}, {"h", l.quotient_dim}, {"basis", basis}};
      }
      r.out = j.dump(2) + "\n";
      return;
    }
    std::ostringstream os;
    os << "degree bound " << report.degree_bound << " (coboundaries from degree " << report.degree_bound + slack
       << ")\n";
    for (const LevelReport& l : report.levels) {
      os << "level " << l.level << ": ker " << l.kernel_dim << ", im " << l.image_dim << ", h " << l.quotient_dim
         << "\n";
      for (const auto& t : l.representatives) os << "  " << to_string(t) << "\n";
    }
    r.out = os.str();
  });
}

/// Without a name, lists the gallery; with one, prints that spec file.
inline CommandResult cmd_examples(const std::string& name) {
  return guarded([&](CommandResult& r) {
    if (name.empty()) {
      for (const auto& e : gallery())
        r.out += e.name + "  (" + e.family + (e.valid ? "" : ", invalid on purpose") + ")\n";
      return;
    }
    const GalleryEntry* e = find_gallery_entry(name);
    if (!e) throw InputError("no example named '" + name + "'");
    r.out = print_manifold_spec(e->build());
  });
}

}  // namespace atp::cli
