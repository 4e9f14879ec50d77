#pragma once

#include "flowlab/lattice.hpp"

namespace flowlab::steiner {

using lattice::LatticeSet;
using lattice::QuasiRect;

// Replace every row by a contiguous run of the same count centered about the
// vertical axis: odd counts sit symmetrically, even counts occupy
// {-k/2+1, ..., k/2}.
LatticeSet symmetrize_rows(const LatticeSet& e);

// Replace every column by a contiguous run of the same count. For odd m the
// runs center about the horizontal axis; for even m odd-count runs are biased
// one cell upward (toward the partial row), matching the embedding of qr.
LatticeSet symmetrize_columns(const LatticeSet& e_prime, const QuasiRect& qr);

struct RearrangeReport {
    LatticeSet input;
    LatticeSet after_rows;
    LatticeSet output;
    Rat perimeter_before, perimeter_after;
    Rat dissipation_before, dissipation_after;  // against qr
};

// Row symmetrization followed by column symmetrization. Preserves cardinality
// and never increases perimeter or dissipation against qr.
RearrangeReport rearrange(const LatticeSet& e, const QuasiRect& qr);

}  // namespace flowlab::steiner
