#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kf/classify.hpp"
#include "kf/int_matrix.hpp"
#include "kf/mapcore.hpp"
#include "kf/roots.hpp"

namespace kf {

// Ordered Picard basis element: the line class H, the exceptional fibers of
// the tower over e_1 (E1, Q, P_i), the orbit-tower fibers Qm_i/R_i, the
// fiber E2 over e_2, and the S_i/T_i fibers of the last odd case.
struct BasisLabel {
    enum Kind { H, E1, Q, P, Qm, R, E2, S, T } kind;
    int index = 0;

    std::string str() const;
    friend bool operator==(const BasisLabel& a, const BasisLabel& b) {
        return a.kind == b.kind && a.index == b.index;
    }
};

inline BasisLabel lab_H() { return {BasisLabel::H}; }
inline BasisLabel lab_E1() { return {BasisLabel::E1}; }
inline BasisLabel lab_Q() { return {BasisLabel::Q}; }
inline BasisLabel lab_P(int i) { return {BasisLabel::P, i}; }
inline BasisLabel lab_Qm(int i) { return {BasisLabel::Qm, i}; }
inline BasisLabel lab_R(int i) { return {BasisLabel::R, i}; }
inline BasisLabel lab_E2() { return {BasisLabel::E2}; }
inline BasisLabel lab_S(int i) { return {BasisLabel::S, i}; }
inline BasisLabel lab_T(int i) { return {BasisLabel::T, i}; }

// Ordered basis plus the exact integer pull-back matrix; column j holds the
// image of basis class j. The E1 column is always the E1 unit vector.
struct PullbackData {
    CaseLabel label;
    std::vector<BasisLabel> basis;
    IntMatrix matrix;

    int index_of(const BasisLabel& l) const;
};

enum class CurveName { C1, C2, C3, C4 };

// Transcribes the per-class pull-back action for the case into matrix
// columns. Throws UnsupportedCase for Odd6 (no finite tower exists there).
PullbackData build_pullback(const CaseLabel& label);

// Expansion of the curve class in the ordered basis of the case.
std::vector<Int> curve_class(const CaseLabel& label, CurveName which);

IntPoly charpoly_pullback(const PullbackData& data);

// Restriction of the action to a subset of classes, written with rows as
// images (the layout the printed matrices use).
IntMatrix restricted_action(const PullbackData& data, const std::vector<BasisLabel>& subset);

// Smallest cofactor +-x^a (x-1)^b (x+1)^c (a, b, c <= max_each) whose product
// with `predicted` annihilates the sequence with zero residuals at every
// admissible shift; absent when none works. The unit factors mirror the ones
// the printed characteristic polynomials carry next to the dominant factor.
std::optional<IntPoly> minimal_unit_annihilator(const IntPoly& predicted,
                                                const std::vector<long>& seq, int max_each = 2);

struct VerifyReport {
    CaseLabel label;
    bool divides = false;        // predicted | char poly of the full matrix
    bool cofactor_units = false; // quotient is +-x^a (x-1)^b (x+1)^c
    bool delta_match = false;    // largest real roots overlap at the width
    bool annihilates = false;    // predicted poly (up to unit factors) annihilates the sequence
    bool predicted_annihilates = false; // ... already with no unit factors at all
    std::optional<IntPoly> annihilator_cofactor;
    std::vector<long> degrees;
    bool pass() const { return divides && cofactor_units && delta_match && annihilates; }
};

// Three-way consistency harness: matrix vs printed polynomial vs degree
// sequence of a representative parameter set.
VerifyReport verify_prediction(const CaseLabel& label, std::uint64_t seed, int N, const Rat& width);
VerifyReport verify_prediction(const MapParams& params, std::uint64_t seed, int N, const Rat& width);

// true iff q == +- x^a (x-1)^b (x+1)^c
bool is_unit_cofactor(const IntPoly& q);

} // namespace kf
