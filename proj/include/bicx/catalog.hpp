#ifndef BICX_CATALOG_HPP
#define BICX_CATALOG_HPP

#include <optional>
#include <string>
#include <vector>

#include "bicx/forms.hpp"

namespace bicx {

/// The five structure constants of d f^3 for the n = 3 family:
///
///     d f^3 = s12 f^1 f^2 + s11b f^1 fb^1 + s12b f^1 fb^2
///           + s21b f^2 fb^1 + s22b f^2 fb^2
struct SigmaSet {
    Scalar s12, s11b, s12b, s21b, s22b;

    bool barred_all_zero() const {
        return s11b.is_zero() && s12b.is_zero() && s21b.is_zero() && s22b.is_zero();
    }
};

/// 2 x 4 matrix of the conjugate-linear coefficients whose rank refines the
/// classification; note the swapped last two columns of the second row.
Mat s_matrix(const SigmaSet& sigma);

enum class DeformationClass { I, IIa, IIb, IIIa, IIIb };

const char* class_name(DeformationClass c); // "(i)", "(ii.a)", ...
std::optional<DeformationClass> class_from_name(const std::string& name);

struct Classification {
    std::optional<DeformationClass> label;
    std::string reason; // set when unclassifiable

    bool ok() const { return label.has_value(); }
};

/// Classifies by the vanishing pattern, rank of the S matrix, and the
/// determinant flag.  Inconsistent combinations come back unclassifiable
/// with a reason instead of a guess.
Classification classify(const SigmaSet& sigma, bool d_nonzero);

struct Preset {
    std::string name;
    std::string summary;
    SigmaSet sigma;
    bool d_nonzero = false;
    DeformationClass declared = DeformationClass::I;
};

/// The compiled-in catalog: torus, iwasawa, deform-b, deform-c, deform-d,
/// ordered by name.  No class (ii.b) entry exists: a rank-2 S matrix with
/// vanishing determinant needs parameters outside this family, and the
/// catalog records that gap instead of inventing one.
const std::vector<Preset>& builtin_presets();

const Preset& find_preset(const std::string& name);

/// One sentence describing the missing (ii.b) case.
std::string catalog_gap_note();

/// n = 3 structure equations of a preset.
StructureEquations preset_equations(const Preset& preset);

DoubleComplex build_preset(const std::string& name);

/// Reads a catalog document (a small TOML subset: one [preset.NAME] section
/// per entry with quoted scalar values, booleans, and a declared class).
/// Each entry is reclassified from its sigmas; a declared class that
/// disagrees with the computed one is rejected, naming the preset.
std::vector<Preset> parse_catalog(const std::string& text);

std::string write_catalog(const std::vector<Preset>& entries);

} // namespace bicx

#endif
