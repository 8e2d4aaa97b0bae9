#include "emit.hpp"

namespace zetaforge::cli {

Json rat(const exact::Rat& x) { return exact::to_string(x); }

Json big(const exact::BigInt& x) { return x.get_str(); }

Json complex_value(std::complex<double> z) {
    if (z.imag() == 0) return z.real();
    return Json{{"re", z.real()}, {"im", z.imag()}};
}

Json object(const Params& params) {
    Json j = Json::object();
    for (const auto& [k, v] : params) j[k] = v;
    return j;
}

Json to_json(const aperynum::CongruenceReport& r) {
    Json params = Json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    return Json{{"kind", r.kind},
                {"params", params},
                {"lhs_residue", big(r.lhs_residue)},
                {"rhs_residue", big(r.rhs_residue)},
                {"modulus", big(r.modulus)},
                {"ok", r.ok}};
}

Json to_json(const aperynum::ZetaCombo& c) {
    Json j = Json::object();
    for (const auto& [b, x] : c.terms()) j[aperynum::basis_name(b)] = rat(x);
    return j;
}

Json quadrature_json(const std::string& op, const Params& params, const specval::QuadratureResult& q) {
    return Json{{"op", op},
                {"params", object(params)},
                {"value", q.value},
                {"std_error", q.std_error},
                {"method", specval::method_name(q.method)},
                {"seed", q.seed},
                {"nodes", q.nodes}};
}

Json to_json(const resum::BorelReport& r) {
    return Json{{"z", r.z},
                {"borel_sum", r.borel_sum},
                {"quadrature_error", r.quadrature_error},
                {"reference_value", r.reference_value},
                {"agreement", r.agreement}};
}

Json to_json(const resum::ComplexBorelReport& r) {
    return Json{{"s", complex_value(r.s)},
                {"z", r.z},
                {"x_route", complex_value(r.x_route)},
                {"laplace_route", complex_value(r.laplace_route)},
                {"quadrature_error", r.quadrature_error},
                {"route_difference", r.route_difference},
                {"hurwitz_value", complex_value(r.hurwitz_value)},
                {"agreement", r.agreement}};
}

Json to_json(const resum::DivergenceTrace& t) {
    Json rows = Json::array();
    for (const auto& r : t.rows) rows.push_back(Json{{"k", r.k}, {"term", r.term}, {"partial_sum", r.partial_sum}});
    return Json{{"label", t.label},
                {"conjecture_support", t.conjecture_support},
                {"smallest_term_k", t.rows.empty() ? 0 : t.rows[t.smallest_term()].k},
                {"rows", rows}};
}

Json to_json(const spectra::SpectrumResult& s) {
    return Json{{"model", spectra::model_name(s.model)},
                {"truncation_N", s.truncation_N},
                {"count", s.eigenvalues.size()},
                {"eigenvalues", s.eigenvalues},
                {"convergence", s.convergence}};
}

Json to_json(const spectra::HeatTraceFit& f) {
    return Json{{"c_minus1", f.c_minus1},
                {"odd_coeffs", f.odd_coeffs},
                {"even_coeffs", f.even_coeffs},
                {"residual_norm", f.residual_norm},
                {"max_abs_residual", f.max_abs_residual},
                {"t_grid", f.t_grid},
                {"trusted", f.trusted}};
}

Json to_json(const series::W2Report& r) {
    Json vs = Json::array();
    for (const auto& v : r.variants) {
        vs.push_back(Json{{"name", v.name},
                          {"description", v.description},
                          {"matched", v.matched},
                          {"first_mismatch", v.first_mismatch ? rat(*v.first_mismatch) : Json(nullptr)}});
    }
    return Json{{"matched", r.matched},
                {"convention_used", r.convention_used},
                {"first_mismatch", r.first_mismatch ? rat(*r.first_mismatch) : Json(nullptr)},
                {"pfaff_form_ok", r.pfaff_form_ok},
                {"variants", vs}};
}

Json to_json(const padic::Padic& x) {
    return Json{{"p", x.prime()},
                {"valuation", x.valuation()},
                {"digits", x.digits()},
                {"precision", x.precision()}};
}

namespace {

std::string cell(const Json& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

void plain_listing(std::ostream& out, const Json& j, const std::string& indent) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const Json& v = it.value();
        if (v.is_object()) {
            out << indent << it.key() << ":\n";
            plain_listing(out, v, indent + "  ");
        } else if (v.is_array() && !v.empty() && v.front().is_object()) {
            out << indent << it.key() << ":\n";
            for (const auto& e : v) {
                out << indent << "  -\n";
                plain_listing(out, e, indent + "    ");
            }
        } else {
            out << indent << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        }
    }
}

}  // namespace

void emit(std::ostream& out, const Json& doc, Format fmt, const std::string& plain) {
    switch (fmt) {
    case Format::JSON:
        out << doc.dump(2) << "\n";
        return;
    case Format::PLAIN:
        if (!plain.empty())
            out << plain << "\n";
        else
            plain_listing(out, doc, "");
        return;
    case Format::CSV: {
        if (doc.contains("rows") && doc["rows"].is_array() && !doc["rows"].empty()) {
            const Json& rows = doc["rows"];
            bool first = true;
            for (auto it = rows.front().begin(); it != rows.front().end(); ++it) {
                out << (first ? "" : ",") << it.key();
                first = false;
            }
            out << "\n";
            for (const auto& r : rows) {
                first = true;
                for (auto it = r.begin(); it != r.end(); ++it) {
                    out << (first ? "" : ",") << cell(it.value());
                    first = false;
                }
                out << "\n";
            }
            return;
        }
        out << "key,value\n";
        for (auto it = doc.begin(); it != doc.end(); ++it) out << it.key() << "," << cell(it.value()) << "\n";
        return;
    }
    }
}

}  // namespace zetaforge::cli
