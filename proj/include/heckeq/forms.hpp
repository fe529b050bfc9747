// Narrow class group as the form class group of discriminant D.
//
// For real quadratic fields the proper equivalence classes of primitive
// binary quadratic forms of discriminant D are exactly the narrow ideal
// classes; for imaginary quadratic fields narrow = ordinary and the forms
// are positive definite.  Composition is Dirichlet composition of
// concordant forms; indefinite classes are cycles of reduced forms under
// the usual rho operation.

#pragma once

#include "heckeq/ideal.hpp"

#include <map>
#include <string>
#include <vector>

namespace heckeq {

struct Bqf {
    Int a = 1, b = 0, c = 0;

    Int disc() const { return b * b - 4 * a * c; }
    bool operator==(const Bqf& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const Bqf& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
};

bool bqf_is_reduced(const Bqf& f, const Int& D);
Bqf bqf_reduce(Bqf f, const Int& D);
// rho step for indefinite forms
Bqf bqf_rho(const Bqf& f, const Int& D);
// cycle of reduced forms through f (f reduced); a singleton for D < 0
std::vector<Bqf> bqf_cycle(const Bqf& f, const Int& D);
std::vector<Bqf> enumerate_reduced_forms(const Int& D);
Bqf principal_form(const Int& D);
// Dirichlet composition (class-level; result is reduced)
Bqf bqf_compose(const Bqf& f1, const Bqf& f2, const Int& D);

struct NarrowClassGroup {
    FieldSpec field;
    Int h_plus = 1;
    std::vector<Bqf> reps;                    // canonical representative per class; reps[0] = identity
    std::vector<std::vector<int>> mult;       // mult[i][j] = index of product class
    std::map<Bqf, int> form_index;            // every reduced form -> its class index

    int identity() const { return 0; }
    int op(int i, int j) const { return mult[i][j]; }
    int inverse(int i) const;
    int element_order(int i) const;
    std::string structure() const;            // e.g. "1", "Z/2", "Z/2 x Z/4"
};

NarrowClassGroup narrow_class_group(const FieldSpec& f);

// Class index of an integral ideal.
int class_of(const Ideal& I, const FieldSpec& f, const NarrowClassGroup& G);
int class_of(const FractionalIdeal& I, const FieldSpec& f, const NarrowClassGroup& G);

// Form attached to an ideal (content-stripped, oriented basis).
Bqf form_of_ideal(const Ideal& I, const FieldSpec& f);

}  // namespace heckeq
