#pragma once

// Construction recipes: a small text format for the CLI plus a lossless JSON
// carrier. A recipe names one of the constructions and its parameters; build()
// turns it into an algebra together with the construction-specific extras
// (the distinguished polynomial, the canonical etale subalgebra, bounds).
//
// Text grammar (elements are expressions in 1, w = field generator, v, u = v^p):
//   cyclic:F4/F2:d=w            cyclic algebra over the field extension F_4/F_2
//   cyclic:F2^2/F2:d=(1,1)      cyclic algebra over the split etale F_2 x F_2
//   gencyclic:M2(F4)/F2:d=w     generalized cyclic over B = M_2(F_4)
//   menichetti:F4/F2:k=1,w      Menichetti algebra with scalars k_i
//   genmenichetti:M2(F4)/F2:k=1,1
//   skewmatrix:F2:n=2           skew matrix algebra, all c = 1
//   skewmatrix:F4:n=2:c212=w    with a 1-based skew-set entry override
//   petit:F8/F2:f=w,0,0,1       Petit algebra of f = w + t^3 (coefficients low-first)
//   diff:p=2:d=v                differential extension (K,delta,d), g = t^p
//   diff:p=2:c=u:d=v            g = t^p - c t with c in F_p(v^p)

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "semialg/differential.hpp"
#include "semialg/serialize.hpp"

namespace semialg {

// --- element expressions -------------------------------------------------------

// Grammar: expr := term (('+'|'-') term)*; term := factor (('*'|'/') factor)*;
// factor := '-'? atom ('^' uint)?; atom := uint | 'w' | 'v' | 'u' | '(' expr ')'.
class ElementParser {
  public:
    ElementParser(Field f, std::string text) : f_(std::move(f)), s_(std::move(text)) {}

    FieldElement parse() {
        FieldElement e = expr();
        skip_ws();
        if (pos_ != s_.size()) throw std::invalid_argument("trailing input in element: " + s_);
        return e;
    }

  private:
    FieldElement expr() {
        FieldElement acc = term();
        for (;;) {
            skip_ws();
            if (peek() == '+') {
                ++pos_;
                acc = acc + term();
            } else if (peek() == '-') {
                ++pos_;
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    FieldElement term() {
        FieldElement acc = factor();
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                acc = acc * factor();
            } else if (peek() == '/') {
                ++pos_;
                acc = acc / factor();
            } else {
                return acc;
            }
        }
    }

    FieldElement factor() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        }
        FieldElement a = atom();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            std::uint64_t e = read_uint();
            a = a.pow(e);
        }
        return neg ? -a : a;
    }

    FieldElement atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            FieldElement e = expr();
            skip_ws();
            if (peek() != ')') throw std::invalid_argument("missing ')' in element: " + s_);
            ++pos_;
            return e;
        }
        if (c == 'w' || c == 'v' || c == 'u') {
            ++pos_;
            if (c == 'w' && f_->kind() != FieldKind::extension)
                throw std::invalid_argument("'w' needs an extension field");
            if ((c == 'v' || c == 'u') && f_->kind() != FieldKind::rational_function)
                throw std::invalid_argument("'" + std::string(1, c) +
                                            "' needs a rational function field");
            return FieldElement::generator(f_);
        }
        if (c >= '0' && c <= '9')
            return FieldElement::from_int(f_, static_cast<std::int64_t>(read_uint()));
        throw std::invalid_argument("bad element expression: " + s_);
    }

    std::uint64_t read_uint() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') ++pos_;
        if (start == pos_) throw std::invalid_argument("expected number in: " + s_);
        return std::stoull(s_.substr(start, pos_ - start));
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
    }

    Field f_;
    std::string s_;
    std::size_t pos_ = 0;
};

inline FieldElement parse_element(const Field& f, const std::string& text) {
    // canonical bracket form is accepted alongside expressions
    if (!text.empty() && text.front() == '[') return FieldElement::parse(f, text);
    return ElementParser(f, text).parse();
}

// --- recipes ---------------------------------------------------------------------

struct Recipe {
    std::string kind;
    json params;

    json to_json() const {
        json j;
        j["kind"] = kind;
        j["params"] = params;
        return j;
    }

    static Recipe from_json(const json& j) {
        return Recipe{j.at("kind").get<std::string>(), j.at("params")};
    }

    static Recipe parse(const std::string& text);
};

namespace detail {

// "F4" -> (p, k) with p^k = 4
inline std::pair<std::uint32_t, std::uint32_t> parse_prime_power(const std::string& s) {
    if (s.empty() || s[0] != 'F') throw std::invalid_argument("bad field token: " + s);
    std::uint64_t q = std::stoull(s.substr(1));
    if (q < 2) throw std::invalid_argument("bad field order: " + s);
    for (std::uint32_t p = 2; p <= q; ++p) {
        if (!fp::is_prime(p)) continue;
        std::uint64_t t = q;
        std::uint32_t k = 0;
        while (t % p == 0) {
            t /= p;
            ++k;
        }
        if (t == 1) return {p, k};
    }
    throw std::invalid_argument("field order is not a prime power: " + s);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) out.push_back(item);
    return out;
}

}  // namespace detail

inline Recipe Recipe::parse(const std::string& text) {
    auto parts = detail::split(text, ':');
    if (parts.empty()) throw std::invalid_argument("empty recipe");
    Recipe r;
    r.kind = parts[0];
    auto get_kv = [&](const std::string& part) {
        auto eq = part.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("expected key=value in recipe part: " + part);
        return std::pair<std::string, std::string>(part.substr(0, eq), part.substr(eq + 1));
    };

    if (r.kind == "cyclic" || r.kind == "menichetti" || r.kind == "petit") {
        if (parts.size() < 3) throw std::invalid_argument("recipe needs a field and parameters");
        // K/F
        auto kf = detail::split(parts[1], '/');
        if (kf.size() != 2) throw std::invalid_argument("expected K/F in recipe: " + parts[1]);
        auto [fp_, fk] = detail::parse_prime_power(kf[1]);
        r.params["p"] = fp_;
        r.params["base_k"] = fk;
        auto caret = kf[0].find('^');
        if (caret != std::string::npos) {
            // split etale F^n
            auto [bp, bk] = detail::parse_prime_power(kf[0].substr(0, caret));
            if (bp != fp_ || bk != fk)
                throw std::invalid_argument("split etale component must equal the base field");
            r.params["split"] = true;
            r.params["n"] = std::stoul(kf[0].substr(caret + 1));
        } else {
            auto [kp, kk] = detail::parse_prime_power(kf[0]);
            if (kp != fp_ || kk % fk != 0)
                throw std::invalid_argument("K must be an extension of F");
            r.params["split"] = false;
            r.params["n"] = kk / fk;
        }
        for (std::size_t i = 2; i < parts.size(); ++i) {
            auto [key, val] = get_kv(parts[i]);
            if (key == "d")
                r.params["d"] = val;
            else if (key == "k")
                r.params["k"] = detail::split(val, ',');
            else if (key == "f")
                r.params["f"] = detail::split(val, ',');
            else
                throw std::invalid_argument("unknown recipe key: " + key);
        }
    } else if (r.kind == "gencyclic" || r.kind == "genmenichetti") {
        if (parts.size() < 3) throw std::invalid_argument("recipe needs a field and parameters");
        // Mn(Fq^j)/F
        auto kf = detail::split(parts[1], '/');
        if (kf.size() != 2) throw std::invalid_argument("expected B/F in recipe: " + parts[1]);
        const std::string& b = kf[0];
        auto lp = b.find('('), rp = b.find(')');
        if (b.empty() || b[0] != 'M' || lp == std::string::npos || rp == std::string::npos)
            throw std::invalid_argument("expected Mn(Fq) coefficient algebra: " + b);
        r.params["n"] = std::stoul(b.substr(1, lp - 1));
        auto [cp, ck] = detail::parse_prime_power(b.substr(lp + 1, rp - lp - 1));
        auto [fp_, fk] = detail::parse_prime_power(kf[1]);
        if (cp != fp_ || ck % fk != 0)
            throw std::invalid_argument("center must be an extension of the base field");
        r.params["p"] = fp_;
        r.params["base_k"] = fk;
        r.params["m"] = ck / fk;
        for (std::size_t i = 2; i < parts.size(); ++i) {
            auto [key, val] = get_kv(parts[i]);
            if (key == "d")
                r.params["d"] = val;
            else if (key == "k")
                r.params["k"] = detail::split(val, ',');
            else
                throw std::invalid_argument("unknown recipe key: " + key);
        }
    } else if (r.kind == "skewmatrix") {
        if (parts.size() < 3) throw std::invalid_argument("skewmatrix needs a field and n");
        auto [p, k] = detail::parse_prime_power(parts[1]);
        r.params["p"] = p;
        r.params["base_k"] = k;
        json overrides = json::object();
        for (std::size_t i = 2; i < parts.size(); ++i) {
            auto [key, val] = get_kv(parts[i]);
            if (key == "n")
                r.params["n"] = std::stoul(val);
            else if (key.size() == 4 && key[0] == 'c')
                overrides[key.substr(1)] = val;
            else
                throw std::invalid_argument("unknown recipe key: " + key);
        }
        r.params["c"] = overrides;
        if (!r.params.contains("n")) throw std::invalid_argument("skewmatrix needs n=<degree>");
    } else if (r.kind == "diff") {
        for (std::size_t i = 1; i < parts.size(); ++i) {
            auto [key, val] = get_kv(parts[i]);
            if (key == "p")
                r.params["p"] = std::stoul(val);
            else if (key == "c")
                r.params["c"] = val;
            else if (key == "d")
                r.params["d"] = val;
            else
                throw std::invalid_argument("unknown recipe key: " + key);
        }
        if (!r.params.contains("p") || !r.params.contains("d"))
            throw std::invalid_argument("diff recipe needs p=<prime> and d=<element>");
    } else {
        throw std::invalid_argument("unknown recipe kind: " + r.kind);
    }
    return r;
}

// --- building --------------------------------------------------------------------

// A recipe materialized: the algebra plus whatever construction data the
// analysis commands need.
struct Constructed {
    Recipe recipe;
    AlgebraSC alg;
    std::optional<PetitAlgebra> petit;           // set when the construction is Petit-backed
    std::optional<std::vector<FieldElement>> d;  // coefficient-ring coordinates of d
    std::optional<GaloisCnAlgebra> K;            // cyclic / menichetti base
    std::optional<DiffField> diff_field;
    MatrixF etale_rows;                          // canonical etale subalgebra E
    std::optional<std::size_t> nucleus_idempotent_bound;
    bool d_in_base = false;                      // d in F (when d exists)
};

inline Constructed build_recipe(const Recipe& r) {
    Constructed out;
    out.recipe = r;
    const json& p = r.params;

    auto base_field = [&]() {
        return FieldDescriptor::extension(p.at("p").get<std::uint32_t>(),
                                          p.value("base_k", 1u));
    };

    if (r.kind == "cyclic") {
        Field F = base_field();
        std::size_t n = p.at("n").get<std::size_t>();
        GaloisCnAlgebra K = p.at("split").get<bool>() ? GaloisCnAlgebra::split_etale(F, n)
                                                      : GaloisCnAlgebra::cyclic_ext(F, n);
        std::vector<FieldElement> d;
        std::string dtext = p.at("d").get<std::string>();
        if (K.is_field() && K.component_field()->kind() == FieldKind::extension &&
            dtext.front() != '(') {
            d = K.to_coords(parse_element(K.component_field(), dtext));
        } else if (dtext.front() == '(') {
            // tuple over F for the split case: (a,b,...)
            auto items = detail::split(dtext.substr(1, dtext.size() - 2), ',');
            if (items.size() != n) throw std::invalid_argument("tuple arity mismatch in d");
            for (const auto& it : items) d.push_back(parse_element(F, it));
        } else {
            d = K.algebra().zero_vec();
            auto val = parse_element(F, dtext);
            for (std::size_t i = 0; i < K.algebra().dim(); ++i)
                d[i] = val * K.algebra().unit()[i];
        }
        CyclicAlgebra c = cyclic_algebra(K, d);
        out.d_in_base = K.in_base_field(d);
        out.alg = c.petit.alg;
        out.petit = std::move(c.petit);
        out.d = std::move(d);
        out.K = std::move(c.K);
        out.etale_rows = MatrixF(F, n, n * n);
        for (std::size_t i = 0; i < n; ++i)
            out.etale_rows.at(i, i) = FieldElement::one(F);
    } else if (r.kind == "gencyclic" || r.kind == "genmenichetti") {
        Field F = base_field();
        std::size_t n = p.at("n").get<std::size_t>();
        std::size_t m = p.at("m").get<std::size_t>();
        AlgebraSC mn = skew_matrix_algebra(F, SkewSet::ones(F, n));
        GaloisCnAlgebra C = GaloisCnAlgebra::cyclic_ext(F, m);
        AlgebraSC b = AlgebraSC::tensor(mn, C.algebra());
        const std::size_t bs = b.dim();
        MatrixF sig(F, bs, bs);
        for (std::size_t u = 0; u < n * n; ++u)
            for (std::size_t v = 0; v < m; ++v)
                for (std::size_t vv = 0; vv < m; ++vv)
                    sig.at(u * m + vv, u * m + v) = C.sigma().at(vv, v);
        auto ring = CoefficientRing::make_sigma(b, sig);
        auto central = [&](const std::string& text) {
            // an element of C = F_{q^m}, embedded as 1 (x) c
            std::vector<FieldElement> cc =
                m == 1 ? std::vector<FieldElement>{parse_element(F, text)}
                       : C.to_coords(parse_element(C.component_field(), text));
            std::vector<FieldElement> v(bs, FieldElement::zero(F));
            for (std::size_t u = 0; u < n * n; ++u)
                for (std::size_t w = 0; w < m; ++w) v[u * m + w] = mn.unit()[u] * cc[w];
            return v;
        };
        if (r.kind == "gencyclic") {
            auto d = central(p.at("d").get<std::string>());
            GeneralizedCyclic gc = generalized_cyclic(ring, d, "(M" + std::to_string(n) + ",s,d)");
            out.d_in_base = [&] {
                MatrixF s2 = sig;
                return s2.apply(d) == d;
            }();
            out.alg = gc.petit.alg;
            out.petit = std::move(gc.petit);
            out.d = std::move(d);
            // E = diagonal (x) C at t^0, dim n*m
            out.etale_rows = MatrixF(F, n * m, out.alg.dim());
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t v = 0; v < m; ++v)
                    out.etale_rows.at(i * m + v, (i * n + i) * m + v) = FieldElement::one(F);
            out.nucleus_idempotent_bound = n;  // Nuc = M_n(C) admits at most n
        } else {
            std::vector<std::vector<FieldElement>> ks;
            for (const auto& kt : p.at("k")) ks.push_back(central(kt.get<std::string>()));
            GeneralizedMenichettiData gm = generalized_menichetti(ring, ks);
            out.alg = gm.alg;
            out.etale_rows = MatrixF(F, n * m, out.alg.dim());
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t v = 0; v < m; ++v)
                    out.etale_rows.at(i * m + v, (i * n + i) * m + v) = FieldElement::one(F);
        }
    } else if (r.kind == "menichetti") {
        Field F = base_field();
        std::size_t n = p.at("n").get<std::size_t>();
        if (p.at("split").get<bool>())
            throw std::invalid_argument("menichetti needs a field extension");
        GaloisCnAlgebra K = GaloisCnAlgebra::cyclic_ext(F, n);
        std::vector<std::vector<FieldElement>> ks;
        for (const auto& kt : p.at("k"))
            ks.push_back(K.to_coords(parse_element(K.component_field(), kt.get<std::string>())));
        MenichettiData md = menichetti(K, ks);
        out.alg = md.alg;
        out.K = std::move(md.K);
        out.etale_rows = MatrixF(F, n, n * n);
        for (std::size_t i = 0; i < n; ++i)
            out.etale_rows.at(i, i) = FieldElement::one(F);
    } else if (r.kind == "skewmatrix") {
        Field F = base_field();
        std::size_t n = p.at("n").get<std::size_t>();
        SkewSet cs = SkewSet::ones(F, n);
        for (auto it = p.at("c").begin(); it != p.at("c").end(); ++it) {
            const std::string& key = it.key();
            if (key.size() != 3) throw std::invalid_argument("skew set key must be 3 digits");
            std::size_t i = static_cast<std::size_t>(key[0] - '1');
            std::size_t j = static_cast<std::size_t>(key[1] - '1');
            std::size_t k = static_cast<std::size_t>(key[2] - '1');
            if (i >= n || j >= n || k >= n) throw std::invalid_argument("skew set index range");
            cs.at(i, j, k) = parse_element(F, it.value().get<std::string>());
        }
        cs.validate();
        out.alg = skew_matrix_algebra(F, cs);
        out.etale_rows = MatrixF(F, n, n * n);
        for (std::size_t i = 0; i < n; ++i)
            out.etale_rows.at(i, i * n + i) = FieldElement::one(F);
    } else if (r.kind == "petit") {
        Field F = base_field();
        std::size_t n = p.at("n").get<std::size_t>();
        if (p.at("split").get<bool>())
            throw std::invalid_argument("petit recipes use field coefficient rings");
        GaloisCnAlgebra K = GaloisCnAlgebra::cyclic_ext(F, n);
        auto ring = CoefficientRing::make_sigma(K.algebra(), K.sigma());
        std::vector<CoefficientRing::Elem> coeffs;
        for (const auto& ct : p.at("f"))
            coeffs.push_back(K.to_coords(parse_element(K.component_field(), ct.get<std::string>())));
        SkewPolynomial f = SkewPolynomial::from_coeffs(ring, std::move(coeffs));
        PetitAlgebra pa = petit_algebra(ring, std::move(f));
        out.alg = pa.alg;
        out.petit = std::move(pa);
        out.K = std::move(K);
        std::size_t dim = out.alg.dim();
        out.etale_rows = MatrixF(F, n, dim);
        for (std::size_t i = 0; i < n; ++i)
            out.etale_rows.at(i, i) = FieldElement::one(F);
    } else if (r.kind == "diff") {
        std::uint32_t pp = p.at("p").get<std::uint32_t>();
        DiffField df(pp);
        FieldElement ct = p.contains("c") ? parse_element(df.constants(), p.at("c").get<std::string>())
                                          : FieldElement::zero(df.constants());
        FieldElement d = parse_element(df.K(), p.at("d").get<std::string>());
        DiffExtension ext = diff_extension(df, ct, d);
        out.d_in_base = df.is_constant(d);
        out.alg = ext.petit.alg;
        out.petit = std::move(ext.petit);
        out.diff_field = df;
        // the K block is the canonical (inseparable, hence non-etale) nucleus
        out.etale_rows = MatrixF(df.constants(), pp, out.alg.dim());
        for (std::uint32_t i = 0; i < pp; ++i)
            out.etale_rows.at(i, i) = FieldElement::one(df.constants());
    } else {
        throw std::invalid_argument("unknown recipe kind: " + r.kind);
    }
    return out;
}

}  // namespace semialg
