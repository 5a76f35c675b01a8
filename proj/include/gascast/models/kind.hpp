#pragma once

#include <optional>
#include <string>

namespace gascast {

enum class ModelKind { ridge, gp, knn, mlp, torus };

inline std::string to_string(ModelKind k) {
    switch (k) {
        case ModelKind::ridge: return "ridge";
        case ModelKind::gp: return "gp";
        case ModelKind::knn: return "knn";
        case ModelKind::mlp: return "mlp";
        case ModelKind::torus: return "torus";
    }
    return "?";
}

inline std::optional<ModelKind> model_kind_from_string(const std::string& s) {
    if (s == "ridge") return ModelKind::ridge;
    if (s == "gp") return ModelKind::gp;
    if (s == "knn") return ModelKind::knn;
    if (s == "mlp") return ModelKind::mlp;
    if (s == "torus") return ModelKind::torus;
    return std::nullopt;
}

}  // namespace gascast
