#include "lfr/textio.hpp"

#include <cmath>
#include <sstream>

namespace lfr {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

OrbitListSpec parse_list_spec(const std::string& text) {
    OrbitListSpec spec;
    if (text.empty()) return spec;
    for (const std::string& part : split(text, ';')) {
        if (part.size() < 3 || part[1] != ':' || (part[0] != 'c' && part[0] != 'o'))
            throw ParseError("bad orbit list '" + part + "', expected c:n,... or o:n,...");
        OrbitListShape L;
        L.closed = part[0] == 'c';
        for (const std::string& n : split(part.substr(2), ',')) {
            size_t used = 0;
            int v = 0;
            try {
                v = std::stoi(n, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != n.size() || n.empty() || v < 1) throw ParseError("bad orbit length '" + n + "'");
            L.lengths.push_back(v);
        }
        spec.lists.push_back(L);
    }
    return spec;
}

std::string list_spec_str(const OrbitListSpec& spec) {
    std::string s;
    for (size_t i = 0; i < spec.lists.size(); ++i) {
        if (i) s += ";";
        s += spec.lists[i].closed ? "c:" : "o:";
        for (size_t j = 0; j < spec.lists[i].lengths.size(); ++j)
            s += (j ? "," : "") + std::to_string(spec.lists[i].lengths[j]);
    }
    return s;
}

namespace {

std::vector<FieldElem> scalars(const std::string& body, size_t n, double tol) {
    auto parts = split(body, ',');
    if (parts.size() != n) throw ParseError("expected " + std::to_string(n) + " comma separated values in '" + body + "'");
    std::vector<FieldElem> v;
    for (auto& p : parts) v.push_back(parse_scalar(p, tol));
    // bring everything to one kind
    Kind k = Kind::Rational;
    for (auto& e : v)
        if (int(e.kind()) > int(k)) k = e.kind();
    for (auto& e : v) e = promote(e, k, tol);
    return v;
}

}  // namespace

ParamPair parse_map(const std::string& text, double tol) {
    if (text == "fig01") return parse_map("f64:0.1,0.3", tol);
    if (text == "figA1") return parse_map("nf:-0.499497,-0.415761", tol);
    auto colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("bad map '" + text + "', expected nf:, f64:, ab: or a preset");
    std::string kind = text.substr(0, colon), body = text.substr(colon + 1);
    if (kind == "nf") {
        auto v = scalars(body, 2, tol);
        return ParamPair::normal_form(v[0], v[1]);
    }
    if (kind == "f64") {
        auto v = scalars(body, 2, tol);
        FieldElem z = v[0].zero_like(), o = v[0].one_like();
        return ParamPair{{z, z, o}, {v[0], o, v[1]}};
    }
    if (kind == "ab") {
        auto v = scalars(body, 6, tol);
        return ParamPair{{v[0], v[1], v[2]}, {v[3], v[4], v[5]}};
    }
    throw ParseError("unknown map kind '" + kind + "'");
}

std::vector<double> parse_doubles(const std::string& text, size_t expected) {
    std::vector<double> out;
    for (auto& p : split(text, ',')) {
        size_t used = 0;
        double d = 0;
        try {
            d = std::stod(p, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != p.size() || p.empty() || !std::isfinite(d)) throw ParseError("bad number '" + p + "'");
        out.push_back(d);
    }
    if (expected && out.size() != expected)
        throw ParseError("expected " + std::to_string(expected) + " numbers in '" + text + "'");
    return out;
}

mpq_class snap_rational(double x, long maxDen) {
    if (!std::isfinite(x)) throw ParseError("cannot snap a non-finite value");
    // continued fraction convergents
    mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double r = x;
    mpq_class best(0);
    for (int it = 0; it < 64; ++it) {
        double a = std::floor(r);
        mpz_class ai(a);
        mpz_class h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (k2 > maxDen) break;
        h0 = h1, h1 = h2, k0 = k1, k1 = k2;
        best = mpq_class(h1, k1);
        double frac = r - a;
        if (std::abs(frac) < 1e-15) break;
        r = 1 / frac;
    }
    best.canonicalize();
    return best;
}

}  // namespace lfr
