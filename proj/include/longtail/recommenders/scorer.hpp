#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "longtail/interaction_matrix.hpp"
#include "longtail/recommenders/als.hpp"
#include "longtail/recommenders/bpr.hpp"
#include "longtail/recommenders/ranking.hpp"

namespace longtail {

enum class ModelKind { iin, als, bpr, random, popularity };

inline constexpr ModelKind kAllModels[] = {ModelKind::iin, ModelKind::als, ModelKind::bpr, ModelKind::random,
                                           ModelKind::popularity};

std::string_view to_string(ModelKind kind);
/// Accepts iin, als, bpr, random, popularity. Throws UnknownEntity.
ModelKind parse_model_kind(std::string_view name);

struct ModelConfigs {
    AlsConfig als;
    BprConfig bpr;
};

/// Common train/score contract. score() returns every candidate exactly once,
/// by descending score with ties broken by ascending track index. A trained
/// scorer is immutable and may be scored from several threads.
class Scorer {
public:
    virtual ~Scorer() = default;

    virtual ModelKind kind() const = 0;
    virtual void train(const InteractionMatrix& matrix) = 0;

    /// `stream` decorrelates otherwise identical calls (only the random
    /// baseline uses it).
    virtual ScoredRanking score(const SparseVector& query, std::span<const Index> candidates,
                                std::uint64_t stream = 0) const = 0;

    /// Latent factors for factor models, nullptr otherwise.
    virtual const FactorModel* factors() const { return nullptr; }
    /// Installs pretrained factors instead of calling train(). Returns false
    /// for models without factors.
    virtual bool adopt(FactorModel) { return false; }
};

/// `seed` replaces the seed fields of the configs.
std::unique_ptr<Scorer> make_scorer(ModelKind kind, const ModelConfigs& configs, std::uint64_t seed);

}  // namespace longtail
