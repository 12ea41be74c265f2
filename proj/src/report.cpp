#include "longtail/report.hpp"

#include <algorithm>
#include <charconv>
#include <fmt/format.h>
#include <ostream>
#include <string>

namespace longtail::report {

namespace {

std::string shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

const char* metric_label(eval::Metric m) {
    switch (m) {
        case eval::Metric::ndcg: return "NDCG";
        case eval::Metric::rprec: return "RPrec";
        case eval::Metric::prec1: return "Prec@1";
    }
    return "?";
}

const char* model_label(ModelKind k) {
    switch (k) {
        case ModelKind::iin: return "Item-Item";
        case ModelKind::als: return "ALS";
        case ModelKind::bpr: return "BPR";
        case ModelKind::random: return "Random";
        case ModelKind::popularity: return "Popular";
    }
    return "?";
}

}  // namespace

void write_csv(std::ostream& out, const eval::EvalReport& report) {
    out << "city,model,level,metric,mean,se,folds,error\n";
    for (const auto& city : report.cities) {
        for (const auto& m : city.models) {
            for (eval::Level l : eval::kLevels) {
                for (eval::Metric k : eval::kMetrics) {
                    out << csv_field(city.city) << ',' << to_string(m.model) << ',' << to_string(l) << ','
                        << to_string(k) << ',';
                    if (m.error) {
                        out << ",,," << csv_field(*m.error) << '\n';
                        continue;
                    }
                    const auto& c = m.cell(l, k);
                    std::string folds;
                    for (std::size_t i = 0; i < c.per_fold.size(); ++i) {
                        if (i) folds += ';';
                        folds += shortest(c.per_fold[i]);
                    }
                    out << shortest(c.mean) << ',' << shortest(c.se) << ',' << folds << ",\n";
                }
            }
        }
    }
}

void write_table(std::ostream& out, const eval::EvalReport& report) {
    constexpr int kCell = 16;
    // Model order follows the first city that lists them.
    std::vector<ModelKind> models;
    for (const auto& c : report.cities) {
        for (const auto& m : c.models) {
            if (std::find(models.begin(), models.end(), m.model) == models.end()) models.push_back(m.model);
        }
    }
    auto find = [](const eval::CityReport& c, ModelKind k) -> const eval::ModelResult* {
        for (const auto& m : c.models) {
            if (m.model == k) return &m;
        }
        return nullptr;
    };

    for (eval::Level level : eval::kLevels) {
        const bool tracks = level == eval::Level::track;
        out << (tracks ? "Tracks" : "Artists") << '\n';
        std::string line = fmt::format("{:<8}{:<11}", "", "");
        for (const auto& c : report.cities) line += fmt::format("{:>{}}", c.city, kCell);
        line += fmt::format("{:>{}}", "Average", kCell);
        out << line << '\n';

        line = fmt::format("{:<19}", tracks ? "Local Tracks" : "Local Artists");
        double total = 0.0;
        for (const auto& c : report.cities) {
            const std::size_t v = tracks ? c.local_tracks : c.local_artists;
            total += static_cast<double>(v);
            line += fmt::format("{:>{}}", v, kCell);
        }
        const double denom = report.cities.empty() ? 1.0 : static_cast<double>(report.cities.size());
        line += fmt::format("{:>{}.3f}", total / denom, kCell);
        out << line << '\n';

        for (eval::Metric metric : eval::kMetrics) {
            for (ModelKind model : models) {
                line = fmt::format("{:<8}{:<11}", metric_label(metric), model_label(model));
                double sum = 0.0;
                std::size_t count = 0;
                for (const auto& c : report.cities) {
                    const auto* m = find(c, model);
                    if (!m || m->error) {
                        line += fmt::format("{:>{}}", "failed", kCell);
                        continue;
                    }
                    const auto& cell = m->cell(level, metric);
                    sum += cell.mean;
                    ++count;
                    line += fmt::format("{:>{}}", fmt::format("{:.3f} ({:.3f})", cell.mean, cell.se), kCell);
                }
                line += count ? fmt::format("{:>{}.3f}", sum / static_cast<double>(count), kCell)
                              : fmt::format("{:>{}}", "-", kCell);
                out << line << '\n';
            }
        }
        out << '\n';
    }

    const auto failures = report.failures();
    if (!failures.empty()) {
        out << "Failures\n";
        for (const auto& f : failures) out << "  " << f << '\n';
    }
}

void write_locality_summary(std::ostream& out, const std::vector<ingest::CitySummary>& rows) {
    out << "city,local_playlists,local_artists,local_tracks,sparsity,sparsity_defined\n";
    for (const auto& r : rows) {
        out << csv_field(r.city) << ',' << r.local_playlists << ',' << r.local_artists << ',' << r.local_tracks << ','
            << shortest(r.sparsity) << ',' << (r.sparsity_defined ? "true" : "false") << '\n';
    }
}

}  // namespace longtail::report
