#include "fracab/types.hpp"

#include <string>

namespace fracab {

std::string_view to_string(DerivativeKind kind) noexcept {
    switch (kind) {
        case DerivativeKind::Caputo: return "caputo";
        case DerivativeKind::CaputoFabrizio: return "cf";
        case DerivativeKind::AtanganaBaleanuCaputo: return "abc";
    }
    return "unknown";
}

DerivativeKind parse_kind(std::string_view name) {
    if (name == "caputo") return DerivativeKind::Caputo;
    if (name == "cf") return DerivativeKind::CaputoFabrizio;
    if (name == "abc") return DerivativeKind::AtanganaBaleanuCaputo;
    throw std::invalid_argument("unknown derivative kind '" + std::string(name) + "'");
}

std::string_view to_string(NormalizationVariant variant) noexcept {
    return variant == NormalizationVariant::Unit ? "unit" : "gammablend";
}

NormalizationVariant parse_normalization(std::string_view name) {
    if (name == "unit") return NormalizationVariant::Unit;
    if (name == "gammablend") return NormalizationVariant::GammaBlend;
    throw std::invalid_argument("unknown normalization '" + std::string(name) + "'");
}

}  // namespace fracab
