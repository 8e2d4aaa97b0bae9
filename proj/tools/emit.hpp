#pragma once

// JSON shapes for library results, and the CSV / plain renderings.

#include <complex>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "zetaforge/aperynum.hpp"
#include "zetaforge/padic.hpp"
#include "zetaforge/resum.hpp"
#include "zetaforge/series.hpp"
#include "zetaforge/spectra.hpp"

namespace zetaforge::cli {

using Json = nlohmann::ordered_json;
using Params = std::vector<std::pair<std::string, Json>>;

enum class Format { JSON, CSV, PLAIN };

Json rat(const exact::Rat& x);
Json big(const exact::BigInt& x);
Json complex_value(std::complex<double> z);
Json object(const Params& params);

Json to_json(const aperynum::CongruenceReport& r);
Json to_json(const aperynum::ZetaCombo& c);
Json quadrature_json(const std::string& op, const Params& params, const specval::QuadratureResult& q);
Json to_json(const resum::BorelReport& r);
Json to_json(const resum::ComplexBorelReport& r);
Json to_json(const resum::DivergenceTrace& t);
Json to_json(const spectra::SpectrumResult& s);
Json to_json(const spectra::HeatTraceFit& f);
Json to_json(const series::W2Report& r);
Json to_json(const padic::Padic& x);

/// Writes `doc` in the requested format. CSV prints the "rows" array when
/// there is one and key,value pairs otherwise; PLAIN prints `plain` when it is
/// nonempty and an indented key: value listing otherwise.
void emit(std::ostream& out, const Json& doc, Format fmt, const std::string& plain = "");

}  // namespace zetaforge::cli
