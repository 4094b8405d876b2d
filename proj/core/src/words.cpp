#include "repknot/words.hpp"

#include <numeric>
#include <sstream>

namespace repknot {

namespace {

void push_reduced(std::vector<Letter>& out, const Letter& l) {
    if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp) {
        out.pop_back();
    } else {
        out.push_back(l);
    }
}

std::vector<Letter> reduce(const std::vector<Letter>& in) {
    std::vector<Letter> out;
    out.reserve(in.size());
    for (const Letter& l : in) push_reduced(out, l);
    return out;
}

}  // namespace

GroupWord::GroupWord(std::vector<Letter> letters) : letters_(reduce(letters)) {}

GroupWord GroupWord::operator*(const GroupWord& o) const {
    std::vector<Letter> out = letters_;
    for (const Letter& l : o.letters_) push_reduced(out, l);
    GroupWord w;
    w.letters_ = std::move(out);
    return w;
}

GroupWord GroupWord::inverse() const {
    std::vector<Letter> out;
    out.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
        out.push_back({it->gen, -it->exp});
    GroupWord w;
    w.letters_ = std::move(out);  // inverse of a reduced word is reduced
    return w;
}

GroupWord GroupWord::star() const {
    std::vector<Letter> out;
    out.reserve(letters_.size());
    for (const Letter& l : letters_)
        out.push_back({l.gen == Gen::X ? Gen::Y : Gen::X, l.exp});
    return GroupWord(std::move(out));
}

GroupWord GroupWord::invert_generators() const {
    std::vector<Letter> out;
    out.reserve(letters_.size());
    for (const Letter& l : letters_) out.push_back({l.gen, -l.exp});
    return GroupWord(std::move(out));
}

long GroupWord::exponent_sum() const {
    long s = 0;
    for (const Letter& l : letters_) s += l.exp;
    return s;
}

Quat GroupWord::evaluate(const Quat& qx, const Quat& qy) const {
    Quat r = identityQ();
    for (const Letter& l : letters_) {
        const Quat& g = (l.gen == Gen::X) ? qx : qy;
        r = qmul(r, l.exp > 0 ? g : qinv(g));
    }
    return r;
}

std::string GroupWord::str() const {
    if (letters_.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const Letter& l : letters_) {
        if (!first) os << ' ';
        first = false;
        os << (l.gen == Gen::X ? 'x' : 'y');
        if (l.exp < 0) os << "^-1";
    }
    return os.str();
}

GroupWord GroupWord::parse(const std::string& text) {
    std::vector<Letter> out;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        if (tok == "1") continue;
        Letter l;
        if (tok[0] == 'x')
            l.gen = Gen::X;
        else if (tok[0] == 'y')
            l.gen = Gen::Y;
        else
            throw InvalidInput("word parse: bad token '" + tok + "'");
        std::string rest = tok.substr(1);
        if (rest.empty())
            l.exp = 1;
        else if (rest == "^-1")
            l.exp = -1;
        else if (rest == "^1")
            l.exp = 1;
        else
            throw InvalidInput("word parse: bad exponent in '" + tok + "'");
        out.push_back(l);
    }
    return GroupWord(std::move(out));
}

TwoBridgeKnot::TwoBridgeKnot(int n_, int k_) : n(n_), k(k_) {
    if (n < 1) throw InvalidInput("two-bridge knot: n must be positive");
    if (k % 2 == 0) throw InvalidInput("two-bridge knot: k must be odd");
    if (k <= 0 || k >= 2 * n + 1)
        throw InvalidInput("two-bridge knot: need 0 < k < 2n+1");
    if (std::gcd(k, 2 * n + 1) != 1)
        throw InvalidInput("two-bridge knot: k must be coprime to 2n+1");
}

TorusKnot::TorusKnot(int p_, int q_) : p(p_), q(q_) {
    if (!(1 < p && p < q)) throw InvalidInput("torus knot: need 1 < p < q");
    if (std::gcd(p, q) != 1) throw InvalidInput("torus knot: p, q must be coprime");
}

GroupWord build_W(const TwoBridgeKnot& K) {
    int m = 2 * K.n + 1;
    std::vector<Letter> out;
    out.reserve(2 * K.n);
    for (int i = 1; i <= 2 * K.n; ++i) {
        int e = ((long(i) * K.k / m) % 2 == 0) ? 1 : -1;
        out.push_back({(i % 2 == 1) ? Gen::X : Gen::Y, e});
    }
    return GroupWord(std::move(out));  // alternation: already reduced
}

GroupWord beta(const TwoBridgeKnot& K) {
    GroupWord W = build_W(K);
    return W.star() * W;
}

GroupWord longitude(const TwoBridgeKnot& K) {
    GroupWord W = build_W(K);
    long e = W.exponent_sum();
    std::vector<Letter> tail;
    for (long i = 0; i < 2 * std::abs(e); ++i)
        tail.push_back({Gen::X, e > 0 ? -1 : 1});
    return beta(K) * GroupWord(std::move(tail));
}

GroupWord torus_meridian(const TorusKnot& T) {
    // u = q^-1 mod p, smallest positive; v = (1 - q u)/p.
    long u = 1;
    while ((T.q * u) % T.p != 1) ++u;
    long v = (1 - long(T.q) * u) / T.p;
    std::vector<Letter> out;
    for (long i = 0; i < u; ++i) out.push_back({Gen::X, 1});
    for (long i = 0; i < std::abs(v); ++i) out.push_back({Gen::Y, v > 0 ? 1 : -1});
    return GroupWord(std::move(out));
}

}  // namespace repknot
