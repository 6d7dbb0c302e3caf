#pragma once

#include <string>
#include <vector>

#include "rdk/root_datum.hpp"

namespace rdk::catalog {

/// One irreducible Cartan factor, e.g. {'A', 3}.
struct SimpleType {
    char series = 'A'; // A B C D E F G
    int rank = 0;
};

/// Parse "A3", "C2xA1", "E6", ... (case-insensitive, 'x' separates factors).
std::vector<SimpleType> parse_type_label(const std::string& label);

/// Cartan matrix C with C(i,j) = <α_j, α̌_i> in Bourbaki numbering;
/// block-diagonal for products.
IntMatrix cartan_matrix(const std::vector<SimpleType>& types);

/// Simply connected datum of the given (product) type in fundamental-weight
/// coordinates: X = Ω with basis ω_1..ω_n, simple root j = column j of the
/// Cartan matrix, simple coroot j = e_j. Full system by reflection closure.
RootDatum simply_connected(const std::vector<SimpleType>& types);

/// Datum for the lattice ZΦ ⊆ A ⊆ Ω spanned by ZΦ together with the given
/// representatives (in ω coordinates). selector "sc" = Ω, "ad" = ZΦ.
RootDatum with_lattice(const std::vector<SimpleType>& types,
                       const std::vector<IntVec>& generators);

/// Named entries: simple labels with "sc"/"ad", plus GL_n / Sp_4 / CSp_4
/// presets ("GL3", "Sp4", "CSp4"). Throws std::invalid_argument on an
/// unknown name.
RootDatum lookup(const std::string& type_label, const std::string& selector);

RootDatum gl(int n);
RootDatum csp4();

/// All lattices A with ZΦ ⊆ A ⊆ X, as column-HNF bases in X-coordinates;
/// requires X/ZΦ finite (semisimple datum). Includes ZΦ and X.
std::vector<IntMatrix> intermediate_lattices(const RootDatum& R);

} // namespace rdk::catalog
