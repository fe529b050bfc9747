// Prime splitting, ideal enumeration by norm, and totally positive
// generators.  This is where the narrow-principality decision lives:
// an ideal is narrowly principal iff its form class is trivial, and in
// that case a deterministic search produces the canonical totally
// positive generator.

#pragma once

#include "heckeq/forms.hpp"
#include "heckeq/units.hpp"

#include <mutex>

namespace heckeq {

// Everything about one field that the higher modules keep passing around.
struct FieldCtx {
    FieldSpec f;
    UnitData units;
    NarrowClassGroup cls;
};

FieldCtx make_field_ctx(const Int& d);

enum class SplitType { split, inert, ramified, rational };

struct PrimeFactor {
    Ideal P;
    int e = 1;      // ramification index
    int f_deg = 1;  // residue degree
    SplitType type = SplitType::rational;
};

std::vector<PrimeFactor> primes_above(const Int& p, const FieldSpec& f);

// All integral ideals of norm exactly n, canonically ordered, duplicate-free.
std::vector<Ideal> ideals_of_norm(const Int& n, const FieldSpec& f);

// Lazy per-field enumeration cache; single writer, many readers.
class EnumCache {
  public:
    explicit EnumCache(FieldSpec f) : f_(std::move(f)) {}

    const std::vector<Ideal>& of_norm(const Int& n);
    std::vector<Ideal> up_to(const Int& B);

    const FieldSpec& field() const { return f_; }

    // snapshot/restore for the persisted cache layer
    std::map<Int, std::vector<Ideal>> snapshot();
    void preload(std::map<Int, std::vector<Ideal>> table);

  private:
    FieldSpec f_;
    std::map<Int, std::vector<Ideal>> by_norm_;
    std::mutex mu_;
};

// Totally positive generator in canonical form if the ideal is narrowly
// principal, absent otherwise.
std::optional<FieldElement> narrowly_principal(const Ideal& I, const FieldCtx& ctx);
std::optional<FieldElement> narrowly_principal(const FractionalIdeal& J, const FieldCtx& ctx);

// As above but throws if absent (for callers that know the class is trivial).
FieldElement canonical_tp_generator(const FractionalIdeal& J, const FieldCtx& ctx);

// Minkowski bound of the field (used to size default enumeration windows).
Rational minkowski_bound(const FieldSpec& f);

}  // namespace heckeq
