#include "cslopes/io.hpp"

#include <fstream>
#include <memory>
#include <sstream>

#include "cslopes/errors.hpp"
#include "cslopes/fusion.hpp"

namespace cslopes {

namespace {

std::vector<std::string> seq_strings(const PeriodicSeq& s, long long period) {
    std::vector<std::string> out;
    for (const Rational& v : s.expanded(period)) out.push_back(v.str());
    return out;
}

PeriodicSeq seq_from_json(const ordered_json& arr) {
    std::vector<Rational> vals;
    for (const auto& x : arr) vals.push_back(Rational::parse(x.get<std::string>()));
    return PeriodicSeq(std::move(vals));
}

} // namespace

ordered_json quasipoly_to_json(const QuasiPoly& qp) {
    long long period = qp.period();
    ordered_json j;
    j["period"] = period;
    j["a"] = seq_strings(qp.a(), period);
    j["b"] = seq_strings(qp.b(), period);
    j["d"] = seq_strings(qp.d(), period);
    j["valid_from"] = qp.valid_from();
    return j;
}

QuasiPoly quasipoly_from_json(const ordered_json& j) {
    try {
        long long period = j.at("period").get<long long>();
        PeriodicSeq a = seq_from_json(j.at("a"));
        PeriodicSeq b = seq_from_json(j.at("b"));
        PeriodicSeq d = seq_from_json(j.at("d"));
        if (j.at("a").size() != static_cast<std::size_t>(period) ||
            j.at("b").size() != static_cast<std::size_t>(period) ||
            j.at("d").size() != static_cast<std::size_t>(period))
            throw ParseError("quasi-polynomial arrays do not match the declared period");
        return QuasiPoly(std::move(a), std::move(b), std::move(d),
                         j.at("valid_from").get<long long>());
    } catch (const ordered_json::exception& e) {
        throw ParseError(std::string("malformed quasi-polynomial JSON: ") + e.what());
    }
}

QuasiPoly load_quasipoly_file(const std::string& path) {
    ordered_json j;
    try {
        j = ordered_json::parse(read_file(path));
    } catch (const ordered_json::exception& e) {
        throw ParseError("cannot parse '" + path + "': " + e.what());
    }
    return quasipoly_from_json(j);
}

ordered_json certificate_to_json(const MaxCertificate& cert) {
    ordered_json j;
    j["n"] = cert.n;
    j["argmax_k"] = cert.argmax_k().str();
    j["max"] = cert.max_value.str();
    if (cert.runner_up_gap)
        j["gap"] = cert.runner_up_gap->str();
    else
        j["gap"] = nullptr;
    j["unique"] = cert.unique;
    return j;
}

ordered_json report_to_json(const SlopeReport& r) {
    ordered_json j;
    j["knot"] = r.knot;
    if (r.cable_p) {
        j["p"] = *r.cable_p;
        j["q"] = *r.cable_q;
    }
    if (r.error) {
        j["error"] = *r.error;
        return j;
    }
    if (r.regime) j["regime"] = *r.regime == Branch::L ? "L" : "R";
    if (r.A) j["A"] = r.A->str();
    std::vector<std::string> js, bs;
    for (const Rational& s : r.js) js.push_back(s.str());
    for (const Rational& s : r.bs_candidates) bs.push_back(s.str());
    j["js"] = js;
    j["bs_candidates"] = bs;
    j["containment"] = r.containment;
    j["b_nonpositive"] = r.b_nonpositive;
    j["b_zero_residues"] = r.b_zero_residues;
    if (r.fit_verified) j["fit_verified"] = *r.fit_verified;
    j["pass"] = r.passed();
    return j;
}

std::string degree_table_csv(const std::vector<std::pair<long long, Rational>>& rows) {
    std::ostringstream os;
    os << "n,d_plus\n";
    for (const auto& [n, d] : rows) os << n << "," << d.str() << "\n";
    return os.str();
}

std::vector<std::pair<long long, Rational>> parse_degree_table_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<std::pair<long long, Rational>> out;
    bool first = true;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line != "n,d_plus")
                throw ParseError("degree table must start with header 'n,d_plus'");
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError("malformed degree table row '" + line + "'");
        try {
            long long n = std::stoll(line.substr(0, comma));
            out.emplace_back(n, Rational::parse(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw ParseError("malformed degree table row '" + line + "'");
        }
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write '" + path + "'");
    f << content;
}

namespace {

std::pair<long long, long long> parse_int_pair(const std::string& s,
                                               const std::string& what) {
    auto comma = s.find(',');
    if (comma == std::string::npos)
        throw ParseError("expected '" + what + ":<int>,<int>', got '" + s + "'");
    try {
        return {std::stoll(s.substr(0, comma)), std::stoll(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw ParseError("malformed integer pair '" + s + "'");
    }
}

} // namespace

std::unique_ptr<DegreeProvider> parse_base_spec(const std::string& spec) {
    if (spec == "unknot") return std::make_unique<UnknotProvider>();
    auto colon = spec.find(':');
    std::string kind = colon == std::string::npos ? spec : spec.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "torus") {
        auto [p, q] = parse_int_pair(rest, "torus");
        return std::make_unique<TorusProvider>(CableParams(p, q));
    }
    if (kind == "fusion") {
        auto [m1, m2] = parse_int_pair(rest, "fusion");
        return std::make_unique<ClosedFormProvider>(fusion_degree(FusionParams{m1, m2}));
    }
    if (kind == "qp") {
        ordered_json j;
        try {
            j = ordered_json::parse(read_file(rest));
        } catch (const ordered_json::exception& e) {
            throw ParseError("cannot parse '" + rest + "': " + e.what());
        }
        QuasiPoly qp = quasipoly_from_json(j);
        std::map<long long, Rational> tail;
        if (j.contains("tail"))
            for (const auto& [k, v] : j.at("tail").items())
                tail.emplace(std::stoll(k), Rational::parse(v.get<std::string>()));
        return std::make_unique<ClosedFormProvider>(std::move(qp), std::move(tail),
                                                    "qp:" + rest);
    }
    throw ParseError("unknown base spec '" + spec +
                     "' (expected unknot | torus:p,q | fusion:m1,m2 | qp:<file>)");
}

} // namespace cslopes
