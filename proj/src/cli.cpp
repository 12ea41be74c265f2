#include "longtail/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "longtail/error.hpp"
#include "longtail/eval.hpp"
#include "longtail/ingest.hpp"
#include "longtail/log.hpp"
#include "longtail/report.hpp"
#include "longtail/synth.hpp"

namespace longtail::cli {

namespace fs = std::filesystem;

namespace {

/// Model list or config problems, reported with exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

struct InputPaths {
    std::string playlists;
    std::string events;
    std::string cities;
    std::string out;
    std::vector<std::string> city_filter;
};

void add_input_flags(CLI::App& cmd, InputPaths& paths) {
    cmd.add_option("--playlists", paths.playlists, "Playlists file (JSON Lines)")->required();
    cmd.add_option("--events", paths.events, "Events file (CSV)")->required();
    cmd.add_option("--cities", paths.cities, "Cities file (CSV)")->required();
    cmd.add_option("--out", paths.out, "Output directory")->required();
    cmd.add_option("--city", paths.city_filter, "Restrict to this city (repeatable)");
}

std::vector<std::string> select_cities(const geo::LocalityTable& table, const std::vector<std::string>& filter) {
    std::vector<std::string> out;
    if (filter.empty()) {
        for (const auto& c : table.cities()) out.push_back(c.city.name);
        return out;
    }
    for (const auto& name : filter) {
        if (!table.contains(name)) throw UnknownEntity("unknown city '" + name + "'");
        if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    }
    return out;
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
    return f;
}

template <typename T>
void read_field(const nlohmann::json& obj, const char* key, T& field) {
    if (const auto it = obj.find(key); it != obj.end()) field = it->get<T>();
}

void check_keys(const nlohmann::json& obj, const std::string& section, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw ConfigError("config section '" + section + "' must be an object");
    for (const auto& [key, value] : obj.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
            throw ConfigError("unknown config key '" + section + "." + key + "'");
        }
    }
}

/// {"als": {factors, alpha, lambda, sweeps, init_std},
///  "bpr": {factors, learning_rate, lambda, epochs, samples_per_epoch, init_std}}
ModelConfigs read_model_configs(const std::string& path) {
    ModelConfigs configs;
    if (path.empty()) return configs;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config '" + path + "'");
    try {
        const auto j = nlohmann::json::parse(in);
        check_keys(j, "<root>", {"als", "bpr"});
        if (const auto it = j.find("als"); it != j.end()) {
            check_keys(*it, "als", {"factors", "alpha", "lambda", "sweeps", "init_std"});
            read_field(*it, "factors", configs.als.factors);
            read_field(*it, "alpha", configs.als.alpha);
            read_field(*it, "lambda", configs.als.lambda);
            read_field(*it, "sweeps", configs.als.sweeps);
            read_field(*it, "init_std", configs.als.init_std);
        }
        if (const auto it = j.find("bpr"); it != j.end()) {
            check_keys(*it, "bpr", {"factors", "learning_rate", "lambda", "epochs", "samples_per_epoch", "init_std"});
            read_field(*it, "factors", configs.bpr.factors);
            read_field(*it, "learning_rate", configs.bpr.learning_rate);
            read_field(*it, "lambda", configs.bpr.lambda);
            read_field(*it, "epochs", configs.bpr.epochs);
            read_field(*it, "samples_per_epoch", configs.bpr.samples_per_epoch);
            read_field(*it, "init_std", configs.bpr.init_std);
        }
        configs.als.validate();
        configs.bpr.validate();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config '" + path + "': " + e.what());
    } catch (const DataError& e) {
        throw ConfigError("config '" + path + "': " + e.what());
    }
    return configs;
}

std::vector<ModelKind> parse_models(const std::string& list) {
    std::vector<ModelKind> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        const auto end = std::min(list.find(',', start), list.size());
        const std::string name = list.substr(start, end - start);
        ModelKind kind;
        try {
            kind = parse_model_kind(name);
        } catch (const UnknownEntity& e) {
            throw ConfigError(e.what());
        }
        if (std::find(out.begin(), out.end(), kind) == out.end()) out.push_back(kind);
        start = end + 1;
    }
    return out;
}

int cmd_localize(const InputPaths& paths, std::ostream& out) {
    const auto ds = ingest::load_dataset(paths.playlists, paths.events, paths.cities);
    const auto cities = select_cities(ds.locality, paths.city_filter);
    std::vector<ingest::CitySummary> rows;
    for (const auto& c : cities) rows.push_back(ingest::summarize(ds.matrix, ds.catalog, ds.locality, c));
    fs::create_directories(paths.out);
    const fs::path target = fs::path(paths.out) / "locality_summary.csv";
    auto f = open_output(target);
    report::write_locality_summary(f, rows);
    out << "wrote " << target.string() << " (" << rows.size() << " cities)\n";
    return kOk;
}

struct EvaluateArgs {
    std::string models = "iin,als,bpr,random,popularity";
    std::string config;
    std::uint64_t seed = 0;
    std::size_t folds = 5;
    std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
    bool include_nonlocal = false;
    std::string model_cache;
};

int cmd_evaluate(const InputPaths& paths, const EvaluateArgs& args, std::ostream& out, std::ostream& err) {
    if (args.folds < 2) throw ConfigError("--folds must be at least 2");
    if (args.jobs < 1) throw ConfigError("--jobs must be at least 1");
    const auto models = parse_models(args.models);
    const auto configs = read_model_configs(args.config);

    const auto ds = ingest::load_dataset(paths.playlists, paths.events, paths.cities);
    const auto cities = select_cities(ds.locality, paths.city_filter);

    eval::RunOptions options;
    options.folds = args.folds;
    options.jobs = args.jobs;
    options.include_nonlocal_in_train = args.include_nonlocal;
    if (!args.model_cache.empty()) options.model_cache = args.model_cache;

    eval::EvalReport report;
    for (const auto& city : cities) {
        try {
            report.cities.push_back(
                eval::run_city(ds.matrix, ds.catalog, ds.locality, city, models, configs, args.seed, options));
        } catch (const DataError& e) {
            eval::CityReport failed;
            failed.city = city;
            for (ModelKind k : models) {
                eval::ModelResult r;
                r.model = k;
                r.error = e.what();
                failed.models.push_back(std::move(r));
            }
            report.cities.push_back(std::move(failed));
        }
    }

    fs::create_directories(paths.out);
    {
        auto f = open_output(fs::path(paths.out) / "report.csv");
        report::write_csv(f, report);
    }
    {
        auto f = open_output(fs::path(paths.out) / "report.txt");
        report::write_table(f, report);
    }
    report::write_table(out, report);
    for (const auto& failure : report.failures()) err << "failed: " << failure << '\n';
    return kOk;
}

int cmd_synth(const std::string& dir, const synth::SynthParams& params, std::ostream& out) {
    const auto data = synth::generate(params);
    synth::write_dataset(dir, data, params);
    out << "wrote synthetic dataset to " << dir << " (" << data.playlists.size() << " playlists, "
        << data.events.size() << " events, " << data.cities.size() << " cities)\n";
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Local music recommendation benchmark: item-item, ALS and BPR recommenders ranked over a city's "
                 "local tracks"};
    app.require_subcommand(1);

    InputPaths localize_paths;
    auto* localize = app.add_subcommand("localize", "Write per-city locality summary statistics");
    add_input_flags(*localize, localize_paths);

    InputPaths eval_paths;
    EvaluateArgs eval_args;
    auto* evaluate = app.add_subcommand("evaluate", "Run five-fold local-track evaluation and write reports");
    add_input_flags(*evaluate, eval_paths);
    evaluate->add_option("--models", eval_args.models, "Comma-separated: iin,als,bpr,random,popularity")
        ->capture_default_str();
    evaluate->add_option("--config", eval_args.config, "Model configuration (JSON)");
    evaluate->add_option("--seed", eval_args.seed, "Global seed")->capture_default_str();
    evaluate->add_option("--folds", eval_args.folds, "Number of folds")->capture_default_str();
    evaluate->add_option("--jobs", eval_args.jobs, "Worker threads")->capture_default_str();
    evaluate->add_flag("--include-nonlocal-in-train", eval_args.include_nonlocal,
                       "Add held-out playlists' non-local tracks to the training matrix");
    evaluate->add_option("--model-cache", eval_args.model_cache, "Directory of reusable LTRC factor models");

    std::string synth_out;
    synth::SynthParams sp;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a planted-structure synthetic dataset");
    synth_cmd->add_option("--out", synth_out, "Output directory")->required();
    synth_cmd->add_option("--playlists", sp.playlists)->capture_default_str();
    synth_cmd->add_option("--tracks", sp.tracks)->capture_default_str();
    synth_cmd->add_option("--cities", sp.cities)->capture_default_str();
    synth_cmd->add_option("--local-artists", sp.local_artists_per_city, "Local artists per city")->capture_default_str();
    synth_cmd->add_option("--tracks-per-artist", sp.tracks_per_artist)->capture_default_str();
    synth_cmd->add_option("--clusters", sp.clusters_per_city, "Co-listening clusters per city")->capture_default_str();
    synth_cmd->add_option("--signature-tracks", sp.signature_tracks_per_cluster)->capture_default_str();
    synth_cmd->add_option("--local-sparsity", sp.local_sparsity, "Target local-block sparsity")->capture_default_str();
    synth_cmd->add_option("--local-per-playlist", sp.local_tracks_per_playlist)->capture_default_str();
    synth_cmd->add_option("--playlist-length", sp.playlist_length)->capture_default_str();
    synth_cmd->add_option("--zipf", sp.zipf_exponent, "Popularity exponent")->capture_default_str();
    synth_cmd->add_option("--seed", sp.seed)->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*localize) return cmd_localize(localize_paths, out);
        if (*evaluate) return cmd_evaluate(eval_paths, eval_args, out, err);
        if (*synth_cmd) return cmd_synth(synth_out, sp, out);
    } catch (const UnknownEntity& e) {
        err << "error: " << e.what() << '\n';
        return kUnknownEntity;
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << '\n';
        return kNumericalError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

}  // namespace longtail::cli
