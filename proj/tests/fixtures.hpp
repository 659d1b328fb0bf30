#pragma once

#include "stratnet/builder.hpp"
#include "stratnet/formula.hpp"

namespace fixtures {

using namespace stratnet;

inline Formula atom(const char* name) { return Formula::atom(name); }

// ?A^ and §A from one axiom: a dereliction on one side, a paragraph on the other.
inline Net shift_left()
{
    Net n = whynot_rule(flat_rule(ax(atom("A")), 0), {0});
    return paragraph_rule(n, 1);
}

// ?X^ @ X
inline Net dereliction()
{
    Net n = whynot_rule(flat_rule(ax(atom("X")), 0), {0});
    return par_rule(n, 0, 1);
}

// §X^ @ X and X^ @ §X
inline Net paragraph_in() { return par_rule(paragraph_rule(ax(atom("X")), 0), 0, 1); }
inline Net paragraph_out() { return par_rule(paragraph_rule(ax(atom("X")), 1), 0, 1); }

// Digging ?C^ @ !!C, built as two nested boxes around an axiom, then cut through a
// tensor/par pair against a net whose matching whynot is a weakening. The digging is
// erased by the exponential step and what remains is indexable.
inline Net not_l3_until_normalized()
{
    Formula c = atom("C");
    Formula ocoes = Formula::ofcourse(Formula::ofcourse(c));
    Net dig = promotion(promotion(flat_rule(ax(c), 0), 1), 1);  // flat C^, !!C
    dig = whynot_rule(dig, {0});                                  // ?C^, !!C
    Net left = tensor_rule(dig, 1, ax(ocoes), 0);                 // ?C^, !!C * ??C^, !!C
    left = par_rule(left, 0, 2);                                  // ?C^ @ !!C, !!C * ??C^

    Formula oc = Formula::ofcourse(c);
    Net right = promotion(flat_rule(ax(oc), 0), 1);               // flat ?C^, !!C
    right = whynot_rule(right, {0});                              // ??C^, !!C
    right = whynot_rule(right, {}, dual(oc));    // ??C^, !!C, ??C^
    right = par_rule(right, 2, 1);                                // ??C^, ??C^ @ !!C
    return cut_rule(left, 1, right, 1);
}

}
