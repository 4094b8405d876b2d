#pragma once

#include <string>
#include <vector>

#include "repknot/quat.hpp"

namespace repknot {

enum class Gen { X, Y };

struct Letter {
    Gen gen = Gen::X;
    int exp = 1;  // +1 or -1
    bool operator==(const Letter&) const = default;
};

// Freely reduced word in the two generators x, y.
class GroupWord {
  public:
    GroupWord() = default;
    explicit GroupWord(std::vector<Letter> letters);

    static GroupWord generator(Gen g, int exp = 1) { return GroupWord({{g, exp}}); }

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t length() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    GroupWord operator*(const GroupWord& o) const;  // concatenate then reduce
    GroupWord inverse() const;
    GroupWord star() const;               // swap x <-> y letter-wise
    GroupWord invert_generators() const;  // x -> x^-1, y -> y^-1
    long exponent_sum() const;

    Quat evaluate(const Quat& qx, const Quat& qy) const;

    // Compact text form, e.g. "x y^-1 x^-1 y"; empty word is "1".
    std::string str() const;
    static GroupWord parse(const std::string& text);

    bool operator==(const GroupWord&) const = default;

  private:
    std::vector<Letter> letters_;
};

// Two-bridge knot b(2n+1, k): relator W x = y W with
// W = x^{e(1)} y^{e(2)} ... y^{e(2n)}, e(i) = (-1)^floor(i*k/(2n+1)).
struct TwoBridgeKnot {
    int n = 1;
    int k = 1;

    TwoBridgeKnot(int n_, int k_);
    int determinant() const { return 2 * n + 1; }
};

struct TorusKnot {
    int p = 2;
    int q = 3;

    TorusKnot(int p_, int q_);
};

GroupWord build_W(const TwoBridgeKnot& K);

// beta = W* W, the peripheral element commuting with the meridian x.
GroupWord beta(const TwoBridgeKnot& K);

// Longitude lambda = beta * x^(-2e), e = exponent_sum(W): peripheral with
// zero abelianized exponent.
GroupWord longitude(const TwoBridgeKnot& K);

// Meridian word x^u y^v with q*u + p*v = 1, u the smallest positive
// representative of q^-1 mod p.
GroupWord torus_meridian(const TorusKnot& T);

}  // namespace repknot
