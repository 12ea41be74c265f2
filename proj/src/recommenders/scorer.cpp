#include "longtail/recommenders/scorer.hpp"

#include <stdexcept>

#include "longtail/error.hpp"
#include "longtail/recommenders/baselines.hpp"
#include "longtail/recommenders/iin.hpp"
#include "longtail/seed.hpp"

namespace longtail {

std::string_view to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::iin: return "iin";
        case ModelKind::als: return "als";
        case ModelKind::bpr: return "bpr";
        case ModelKind::random: return "random";
        case ModelKind::popularity: return "popularity";
    }
    return "?";
}

ModelKind parse_model_kind(std::string_view name) {
    for (ModelKind k : kAllModels) {
        if (to_string(k) == name) return k;
    }
    throw UnknownEntity("unknown model '" + std::string(name) + "'");
}

namespace {

class ItemItemScorer final : public Scorer {
public:
    ModelKind kind() const override { return ModelKind::iin; }
    void train(const InteractionMatrix& matrix) override { model_.emplace(matrix); }
    ScoredRanking score(const SparseVector& query, std::span<const Index> candidates, std::uint64_t) const override {
        if (!model_) throw std::logic_error("item-item scorer used before train()");
        return model_->score(query, candidates);
    }

private:
    std::optional<ItemItemModel> model_;
};

class PopularityScorer final : public Scorer {
public:
    ModelKind kind() const override { return ModelKind::popularity; }
    void train(const InteractionMatrix& matrix) override { train_ = matrix; }
    ScoredRanking score(const SparseVector&, std::span<const Index> candidates, std::uint64_t) const override {
        return popularity_score(train_, candidates);
    }

private:
    InteractionMatrix train_;
};

class RandomScorer final : public Scorer {
public:
    explicit RandomScorer(std::uint64_t seed) : seed_(seed) {}
    ModelKind kind() const override { return ModelKind::random; }
    void train(const InteractionMatrix&) override {}
    ScoredRanking score(const SparseVector&, std::span<const Index> candidates, std::uint64_t stream) const override {
        return random_score(candidates, combine_seed(seed_, stream));
    }

private:
    std::uint64_t seed_;
};

// Shared fold-in + dot-product scoring for ALS and BPR.
class FactorScorer : public Scorer {
public:
    const FactorModel* factors() const override { return model_ ? &*model_ : nullptr; }

    bool adopt(FactorModel model) override {
        track_gram_ = gram(model.track_factors);
        model_ = std::move(model);
        return true;
    }

    ScoredRanking score(const SparseVector& query, std::span<const Index> candidates, std::uint64_t) const override {
        if (!model_) throw std::logic_error("factor scorer used before train()");
        auto r = factor_score(*model_, fold_in(*model_, track_gram_, query), candidates);
        r.fallback_order = query.empty();
        return r;
    }

protected:
    virtual std::vector<double> fold_in(const FactorModel& model, const DenseMatrix& gram,
                                        const SparseVector& query) const = 0;

private:
    std::optional<FactorModel> model_;
    DenseMatrix track_gram_;
};

class AlsScorer final : public FactorScorer {
public:
    explicit AlsScorer(AlsConfig config) : config_(config) {}
    ModelKind kind() const override { return ModelKind::als; }
    void train(const InteractionMatrix& matrix) override { adopt(als_train(matrix, config_)); }

private:
    std::vector<double> fold_in(const FactorModel& model, const DenseMatrix& g, const SparseVector& q) const override {
        return als_fold_in(model, g, q, config_);
    }
    AlsConfig config_;
};

class BprScorer final : public FactorScorer {
public:
    explicit BprScorer(BprConfig config) : config_(config) {}
    ModelKind kind() const override { return ModelKind::bpr; }
    void train(const InteractionMatrix& matrix) override { adopt(bpr_train(matrix, config_)); }

private:
    std::vector<double> fold_in(const FactorModel& model, const DenseMatrix& g, const SparseVector& q) const override {
        return bpr_fold_in(model, g, q, config_);
    }
    BprConfig config_;
};

}  // namespace

std::unique_ptr<Scorer> make_scorer(ModelKind kind, const ModelConfigs& configs, std::uint64_t seed) {
    switch (kind) {
        case ModelKind::iin: return std::make_unique<ItemItemScorer>();
        case ModelKind::popularity: return std::make_unique<PopularityScorer>();
        case ModelKind::random: return std::make_unique<RandomScorer>(seed);
        case ModelKind::als: {
            AlsConfig c = configs.als;
            c.seed = seed;
            c.validate();
            return std::make_unique<AlsScorer>(c);
        }
        case ModelKind::bpr: {
            BprConfig c = configs.bpr;
            c.seed = seed;
            c.validate();
            return std::make_unique<BprScorer>(c);
        }
    }
    throw UnknownEntity("unknown model kind");
}

}  // namespace longtail
