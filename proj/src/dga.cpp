#include "billiards/dga.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace billiards::dga {

void AlgebraParams::validate() const {
    if (m < 1) throw std::invalid_argument("algebra needs m >= 1");
    if (n < 1 || n > 30) throw std::invalid_argument("algebra needs 1 <= n <= 30");
}

int Monomial::s_count() const { return std::popcount(s); }
int Monomial::u_count() const { return std::popcount(u); }

namespace {

std::vector<int> bits(std::uint32_t mask) {
    std::vector<int> out;
    for (int i = 0; mask != 0; ++i, mask >>= 1) {
        if (mask & 1u) out.push_back(i);
    }
    return out;
}

int degree_of(const Generator& g, int m) { return g.kind == Generator::Kind::S ? m - 1 : m; }

bool canonical_before(const Generator& a, const Generator& b) {
    if (a.kind != b.kind) return a.kind == Generator::Kind::S;
    return a.index < b.index;
}

std::uint32_t full_s_mask(int n) { return (n + 1 >= 32) ? ~0u : ((1u << (n + 1)) - 1u); }

}  // namespace

std::vector<int> Monomial::s_indices() const { return bits(s); }
std::vector<int> Monomial::u_indices() const { return bits(u); }

std::pair<int, int> Monomial::bidegree(int m) const { return {m * u_count(), (m - 1) * s_count()}; }

int Monomial::total_degree(int m) const { return m * u_count() + (m - 1) * s_count(); }

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
    const auto as = a.s_indices();
    const auto bs = b.s_indices();
    if (as != bs) return std::lexicographical_compare(as.begin(), as.end(), bs.begin(), bs.end());
    const auto au = a.u_indices();
    const auto bu = b.u_indices();
    return std::lexicographical_compare(au.begin(), au.end(), bu.begin(), bu.end());
}

int block_representative(std::uint32_t s_mask, int slot) {
    // slot j is joined to j-1 exactly when s_{j-1} is present
    while (slot > 0 && (s_mask & (1u << (slot - 1)))) --slot;
    return slot;
}

namespace {

bool touches_right_end(std::uint32_t s_mask, int slot, int n) {
    while (slot <= n && (s_mask & (1u << slot))) ++slot;
    return slot == n + 1;
}

}  // namespace

std::vector<int> interior_block_representatives(std::uint32_t s_mask, int n) {
    std::vector<int> reps;
    for (int j = 1; j <= n; ++j) {
        if (block_representative(s_mask, j) != j || touches_right_end(s_mask, j, n)) continue;
        reps.push_back(j);
    }
    return reps;
}

std::optional<Normalized> normalize(std::span<const Generator> word, int m, int n) {
    std::uint32_t s_mask = 0;
    for (const auto& g : word) {
        if (g.kind == Generator::Kind::S) {
            if (g.index < 0 || g.index > n)
                throw std::invalid_argument("s index " + std::to_string(g.index) + " out of range 0.." +
                                            std::to_string(n));
            if (s_mask & (1u << g.index)) return std::nullopt;  // s_i^2 = 0
            s_mask |= 1u << g.index;
        } else if (g.index < 1 || g.index > n) {
            throw std::invalid_argument("u index " + std::to_string(g.index) + " out of range 1.." +
                                        std::to_string(n));
        }
    }
    if (s_mask == full_s_mask(n)) return std::nullopt;  // s_0 s_1 ... s_n = 0

    std::vector<Generator> w(word.begin(), word.end());
    std::uint32_t u_mask = 0;
    for (auto& g : w) {
        if (g.kind != Generator::Kind::U) continue;
        const int rep = block_representative(s_mask, g.index);
        if (rep == 0 || touches_right_end(s_mask, rep, n)) return std::nullopt;  // u_1 s_0 = 0, u_n s_n = 0
        if (u_mask & (1u << rep)) return std::nullopt;                          // u^2 = 0 after merging
        u_mask |= 1u << rep;
        g.index = rep;
    }

    // Insertion sort; each transposition of neighbours of degrees d, d'
    // costs (-1)^{d d'}.
    int sign = 1;
    for (std::size_t i = 1; i < w.size(); ++i) {
        for (std::size_t j = i; j > 0 && canonical_before(w[j], w[j - 1]); --j) {
            if ((degree_of(w[j], m) * degree_of(w[j - 1], m)) % 2 != 0) sign = -sign;
            std::swap(w[j], w[j - 1]);
        }
    }
    return Normalized{Monomial{s_mask, u_mask}, sign};
}

AlgebraElement::AlgebraElement(AlgebraParams params) : params_(params) { params_.validate(); }

AlgebraElement AlgebraElement::one(const AlgebraParams& params) {
    return monomial(params, Monomial{}, FieldScalar::one(params.field));
}

AlgebraElement AlgebraElement::generator(const AlgebraParams& params, Generator g) {
    const Generator w[] = {g};
    return word(params, w);
}

AlgebraElement AlgebraElement::monomial(const AlgebraParams& params, const Monomial& mono,
                                        const FieldScalar& coeff) {
    AlgebraElement e(params);
    e.add_term(mono, coeff);
    return e;
}

AlgebraElement AlgebraElement::word(const AlgebraParams& params, std::span<const Generator> gens) {
    AlgebraElement e(params);
    for (const auto& g : gens) {
        if (g.kind == Generator::Kind::U && params.kind == AlgebraKind::Euclidean)
            throw std::invalid_argument("u generators do not exist in the Euclidean algebra");
    }
    if (auto nf = normalize(gens, params.m, params.n)) {
        e.add_term(nf->monomial, FieldScalar(params.field, static_cast<long>(nf->sign)));
    }
    return e;
}

FieldScalar AlgebraElement::coefficient(const Monomial& mono) const {
    auto it = terms_.find(mono);
    return it == terms_.end() ? FieldScalar::zero(params_.field) : it->second;
}

std::optional<int> AlgebraElement::homogeneous_degree() const {
    std::optional<int> deg;
    for (const auto& [mono, c] : terms_) {
        const int d = mono.total_degree(params_.m);
        if (deg && *deg != d) return std::nullopt;
        deg = d;
    }
    return deg;
}

void AlgebraElement::add_term(const Monomial& mono, const FieldScalar& coeff) {
    if (!(coeff.field() == params_.field)) throw std::invalid_argument("coefficient from a different field");
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(mono, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void AlgebraElement::check(const AlgebraElement& o) const {
    if (!(params_ == o.params_)) throw std::invalid_argument("algebra elements with different parameters");
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
    check(o);
    for (const auto& [mono, c] : o.terms_) add_term(mono, c);
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
    check(o);
    for (const auto& [mono, c] : o.terms_) add_term(mono, -c);
    return *this;
}

AlgebraElement& AlgebraElement::operator*=(const FieldScalar& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [mono, coeff] : terms_) coeff *= c;
    return *this;
}

AlgebraElement AlgebraElement::operator-() const {
    AlgebraElement out = *this;
    for (auto& [mono, coeff] : out.terms_) coeff = -coeff;
    return out;
}

namespace {

std::vector<Generator> as_word(const Monomial& mono) {
    std::vector<Generator> w;
    for (int i : mono.s_indices()) w.push_back(Generator::s(i));
    for (int j : mono.u_indices()) w.push_back(Generator::u(j));
    return w;
}

}  // namespace

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    a.check(b);
    const AlgebraParams& p = a.params_;
    AlgebraElement out(p);
    for (const auto& [ma, ca] : a.terms_) {
        const auto wa = as_word(ma);
        for (const auto& [mb, cb] : b.terms_) {
            auto w = wa;
            const auto wb = as_word(mb);
            w.insert(w.end(), wb.begin(), wb.end());
            if (auto nf = normalize(w, p.m, p.n)) {
                out.add_term(nf->monomial, ca * cb * FieldScalar(p.field, static_cast<long>(nf->sign)));
            }
        }
    }
    return out;
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    if (!(a.params_ == b.params_) || a.terms_.size() != b.terms_.size()) return false;
    return std::equal(a.terms_.begin(), a.terms_.end(), b.terms_.begin(),
                      [](const auto& x, const auto& y) { return x.first == y.first && x.second == y.second; });
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) { return a * b; }

AlgebraElement power(const AlgebraElement& a, int k) {
    if (k < 0) throw std::invalid_argument("negative power");
    AlgebraElement out = AlgebraElement::one(a.params());
    for (int i = 0; i < k; ++i) out = out * a;
    return out;
}

std::string monomial_to_string(const Monomial& mono) {
    if (mono.s == 0 && mono.u == 0) return "1";
    std::string out;
    for (int i : mono.s_indices()) out += (out.empty() ? "s" : " s") + std::to_string(i);
    for (int j : mono.u_indices()) out += (out.empty() ? "u" : " u") + std::to_string(j);
    return out;
}

std::string AlgebraElement::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [mono, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += c.to_string();
        if (mono.s != 0 || mono.u != 0) out += "*" + monomial_to_string(mono);
    }
    return out;
}

namespace {

// d s_i as a list of (coefficient, u index).
std::vector<std::pair<int, int>> differential_of_s(int i, int m, int n) {
    const bool odd = m % 2 == 1;
    std::vector<std::pair<int, int>> out;
    if (i == 0) {
        out.emplace_back(odd ? -1 : 1, 1);
    } else if (i == n) {
        out.emplace_back(1, n);
    } else {
        out.emplace_back(1, i);
        out.emplace_back(odd ? -1 : 1, i + 1);
    }
    return out;
}

}  // namespace

AlgebraElement differential(const AlgebraElement& a) {
    const AlgebraParams& p = a.params();
    if (p.kind != AlgebraKind::SphereTerm)
        throw std::invalid_argument("differential is defined on the sphere E_m term only");
    AlgebraElement out(p);
    for (const auto& [mono, c] : a.terms()) {
        const auto s_list = mono.s_indices();
        const auto u_list = mono.u_indices();
        for (std::size_t l = 0; l < s_list.size(); ++l) {
            // passing d over l generators of degree m-1
            const int koszul = ((p.m - 1) * static_cast<int>(l)) % 2 == 0 ? 1 : -1;
            for (const auto& [coeff, uj] : differential_of_s(s_list[l], p.m, p.n)) {
                std::vector<Generator> w;
                for (std::size_t k = 0; k < s_list.size(); ++k) {
                    w.push_back(k == l ? Generator::u(uj) : Generator::s(s_list[k]));
                }
                for (int j : u_list) w.push_back(Generator::u(j));
                if (auto nf = normalize(w, p.m, p.n)) {
                    out.add_term(nf->monomial, c * FieldScalar(p.field, static_cast<long>(koszul * coeff * nf->sign)));
                }
            }
        }
    }
    return out;
}

std::vector<Monomial> full_basis(const AlgebraParams& params) {
    params.validate();
    const std::uint32_t full = full_s_mask(params.n);
    std::vector<Monomial> out;
    for (std::uint32_t s = 0; s < full; ++s) {
        if (params.kind == AlgebraKind::Euclidean) {
            out.push_back(Monomial{s, 0});
            continue;
        }
        const auto reps = interior_block_representatives(s, params.n);
        const std::uint32_t subsets = 1u << reps.size();
        for (std::uint32_t pick = 0; pick < subsets; ++pick) {
            std::uint32_t u = 0;
            for (std::size_t r = 0; r < reps.size(); ++r) {
                if (pick & (1u << r)) u |= 1u << reps[r];
            }
            out.push_back(Monomial{s, u});
        }
    }
    std::sort(out.begin(), out.end(), MonomialLess{});
    return out;
}

std::vector<Monomial> basis(const AlgebraParams& params, int total_degree) {
    std::vector<Monomial> out;
    for (const auto& mono : full_basis(params)) {
        if (mono.total_degree(params.m) == total_degree) out.push_back(mono);
    }
    return out;
}

int max_total_degree(const AlgebraParams& params) {
    int best = 0;
    for (const auto& mono : full_basis(params)) best = std::max(best, mono.total_degree(params.m));
    return best;
}

AlgebraElement parse_element(const AlgebraParams& params, const std::string& text) {
    AlgebraElement out(params);
    std::string trimmed = text;
    trimmed.erase(0, trimmed.find_first_not_of(" \t"));
    trimmed.erase(trimmed.find_last_not_of(" \t") + 1);
    if (trimmed == "0") return out;

    // Split into signed terms at " + " and " - ".
    std::vector<std::pair<bool, std::string>> terms;
    std::size_t start = 0;
    bool negate = false;
    for (;;) {
        const std::size_t plus = trimmed.find(" + ", start);
        const std::size_t minus = trimmed.find(" - ", start);
        const std::size_t cut = std::min(plus, minus);
        terms.emplace_back(negate, trimmed.substr(start, cut == std::string::npos ? std::string::npos : cut - start));
        if (cut == std::string::npos) break;
        negate = cut == minus;
        start = cut + 3;
    }

    for (const auto& [neg, term] : terms) {
        if (term.empty()) throw std::invalid_argument("empty term in '" + text + "'");

        std::string coeff_text = "1";
        std::string word_text = term;
        if (auto star = term.find('*'); star != std::string::npos) {
            coeff_text = term.substr(0, star);
            word_text = term.substr(star + 1);
        } else if (term.find_first_of("su") == std::string::npos) {
            coeff_text = term;
            word_text.clear();
        }
        mpq_class q;
        if (q.set_str(coeff_text, 10) != 0) throw std::invalid_argument("bad coefficient '" + coeff_text + "'");
        q.canonicalize();
        if (neg) q = -q;

        std::vector<Generator> gens;
        std::istringstream words(word_text);
        std::string tok;
        while (words >> tok) {
            if (tok == "1") continue;
            if (tok.size() < 2 || (tok[0] != 's' && tok[0] != 'u') ||
                tok.find_first_not_of("0123456789", 1) != std::string::npos)
                throw std::invalid_argument("bad generator '" + tok + "'");
            const int idx = std::stoi(tok.substr(1));
            gens.push_back(tok[0] == 's' ? Generator::s(idx) : Generator::u(idx));
        }
        out += AlgebraElement::word(params, gens) * FieldScalar(params.field, q);
    }
    return out;
}

}  // namespace billiards::dga
