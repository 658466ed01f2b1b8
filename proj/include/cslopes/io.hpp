#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cslopes/cabling.hpp"
#include "cslopes/conjectures.hpp"
#include "cslopes/quasipoly.hpp"

namespace cslopes {

using ordered_json = nlohmann::ordered_json;

/// QuasiPoly <-> {"period": π, "a": ["2/3", ...], "b": [...], "d": [...],
/// "valid_from": N}; residue index 0 corresponds to n ≡ 0 (mod π); the three
/// sequences are expanded to the common period.
ordered_json quasipoly_to_json(const QuasiPoly& qp);
QuasiPoly quasipoly_from_json(const ordered_json& j);

QuasiPoly load_quasipoly_file(const std::string& path);

ordered_json certificate_to_json(const MaxCertificate& cert);

ordered_json report_to_json(const SlopeReport& r);

/// Degree table CSV: header "n,d_plus", one row per color, rational strings.
std::string degree_table_csv(const std::vector<std::pair<long long, Rational>>& rows);
std::vector<std::pair<long long, Rational>> parse_degree_table_csv(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Base-knot mini-language: "unknot", "torus:p,q", "fusion:m1,m2",
/// "qp:<file>" (quasi-polynomial JSON; an optional "tail" object supplies
/// exact degrees below valid_from).
std::unique_ptr<DegreeProvider> parse_base_spec(const std::string& spec);

} // namespace cslopes
