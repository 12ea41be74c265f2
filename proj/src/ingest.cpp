#include "longtail/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include <nlohmann/json.hpp>

#include "longtail/error.hpp"
#include "longtail/log.hpp"

namespace longtail::ingest {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Comma-separated fields with optional double-quoting ("" escapes a quote).
std::vector<std::string> split_csv(std::string_view line, const std::string& name, std::size_t lineno) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            if (!trim(cur).empty()) throw ParseError(name, lineno, "stray quote inside field");
            cur.clear();
            quoted = true;
            was_quoted = true;
        } else if (c == ',') {
            fields.push_back(was_quoted ? cur : std::string(trim(cur)));
            cur.clear();
            was_quoted = false;
        } else {
            cur.push_back(c);
        }
    }
    if (quoted) throw ParseError(name, lineno, "unterminated quoted field");
    fields.push_back(was_quoted ? cur : std::string(trim(cur)));
    return fields;
}

std::string quote_csv(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos && trim(s) == s) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& field, const char* what, const std::string& name, std::size_t lineno) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    if (!field.empty() && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (field.empty() || res.ec != std::errc{} || res.ptr != last) {
        throw ParseError(name, lineno, std::string("invalid ") + what + " '" + field + "'");
    }
    return v;
}

// Returns column positions of the required/optional header names.
std::map<std::string, std::size_t> read_header(const std::vector<std::string>& header,
                                               std::initializer_list<const char*> required,
                                               std::initializer_list<const char*> optional, const std::string& name) {
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (!pos.emplace(header[i], i).second) throw ParseError(name, 1, "duplicate column '" + header[i] + "'");
    }
    for (const char* r : required) {
        if (!pos.count(r)) throw ParseError(name, 1, std::string("missing column '") + r + "'");
    }
    for (const auto& [col, i] : pos) {
        const bool known = std::any_of(required.begin(), required.end(), [&](const char* r) { return col == r; }) ||
                           std::any_of(optional.begin(), optional.end(), [&](const char* r) { return col == r; });
        if (!known) throw ParseError(name, 1, "unexpected column '" + col + "'");
    }
    return pos;
}

template <typename RowFn>
void for_each_csv_row(std::istream& in, const std::string& name, std::initializer_list<const char*> required,
                      std::initializer_list<const char*> optional, RowFn&& fn) {
    std::string line;
    std::size_t lineno = 0;
    std::map<std::string, std::size_t> columns;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        auto fields = split_csv(line, name, lineno);
        if (!have_header) {
            if (lineno != 1) throw ParseError(name, lineno, "header must be the first line");
            columns = read_header(fields, required, optional, name);
            have_header = true;
            continue;
        }
        if (fields.size() != columns.size()) {
            throw ParseError(name, lineno,
                             "expected " + std::to_string(columns.size()) + " fields, got " +
                                 std::to_string(fields.size()));
        }
        fn(columns, fields, lineno);
    }
}

std::string required_string(const nlohmann::json& obj, const char* key, const std::string& name,
                            std::size_t lineno) {
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_string() || it->get_ref<const std::string&>().empty()) {
        throw ParseError(name, lineno, std::string("field '") + key + "' must be a non-empty string");
    }
    return it->get<std::string>();
}

std::ifstream open(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    return in;
}

}  // namespace

std::vector<PlaylistRecord> read_playlists(std::istream& in, const std::string& name) {
    std::vector<PlaylistRecord> out;
    std::set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        nlohmann::json rec;
        try {
            rec = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(name, lineno, std::string("invalid JSON: ") + e.what());
        }
        if (!rec.is_object()) throw ParseError(name, lineno, "playlist record must be a JSON object");
        PlaylistRecord p;
        p.playlist_id = required_string(rec, "playlist_id", name, lineno);
        if (!seen.insert(p.playlist_id).second) {
            throw ParseError(name, lineno, "duplicate playlist_id '" + p.playlist_id + "'");
        }
        const auto tracks = rec.find("tracks");
        if (tracks == rec.end() || !tracks->is_array()) throw ParseError(name, lineno, "field 'tracks' must be an array");
        for (const auto& t : *tracks) {
            if (!t.is_object()) throw ParseError(name, lineno, "track entries must be objects");
            p.tracks.push_back({required_string(t, "track_id", name, lineno), required_string(t, "artist_id", name, lineno)});
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<geo::EventRecord> read_events(std::istream& in, const std::string& name) {
    std::vector<geo::EventRecord> out;
    for_each_csv_row(in, name, {"event_id", "artist_id", "venue_lat", "venue_lon"}, {},
                     [&](const auto& col, const std::vector<std::string>& f, std::size_t lineno) {
                         geo::EventRecord e;
                         e.event_id = f[col.at("event_id")];
                         e.artist_id = f[col.at("artist_id")];
                         if (e.event_id.empty() || e.artist_id.empty()) {
                             throw ParseError(name, lineno, "event_id and artist_id must be non-empty");
                         }
                         e.venue.lat = parse_double(f[col.at("venue_lat")], "venue_lat", name, lineno);
                         e.venue.lon = parse_double(f[col.at("venue_lon")], "venue_lon", name, lineno);
                         try {
                             geo::validate(e.venue);
                         } catch (const DataError& err) {
                             throw ParseError(name, lineno, err.what());
                         }
                         out.push_back(std::move(e));
                     });
    return out;
}

std::vector<geo::CityCenter> read_cities(std::istream& in, const std::string& name) {
    std::vector<geo::CityCenter> out;
    std::set<std::string> seen;
    for_each_csv_row(in, name, {"name", "lat", "lon"}, {"radius_miles"},
                     [&](const auto& col, const std::vector<std::string>& f, std::size_t lineno) {
                         geo::CityCenter c;
                         c.name = f[col.at("name")];
                         if (c.name.empty()) throw ParseError(name, lineno, "city name must be non-empty");
                         if (!seen.insert(c.name).second) throw ParseError(name, lineno, "duplicate city '" + c.name + "'");
                         c.center.lat = parse_double(f[col.at("lat")], "lat", name, lineno);
                         c.center.lon = parse_double(f[col.at("lon")], "lon", name, lineno);
                         try {
                             geo::validate(c.center);
                         } catch (const DataError& err) {
                             throw ParseError(name, lineno, err.what());
                         }
                         if (const auto r = col.find("radius_miles"); r != col.end() && !f[r->second].empty()) {
                             c.radius_miles = parse_double(f[r->second], "radius_miles", name, lineno);
                             if (!(c.radius_miles > 0.0)) throw ParseError(name, lineno, "radius_miles must be positive");
                         }
                         out.push_back(std::move(c));
                     });
    return out;
}

void write_playlists(std::ostream& out, const std::vector<PlaylistRecord>& playlists) {
    for (const auto& p : playlists) {
        nlohmann::json tracks = nlohmann::json::array();
        for (const auto& t : p.tracks) tracks.push_back({{"track_id", t.track_id}, {"artist_id", t.artist_id}});
        out << nlohmann::json{{"playlist_id", p.playlist_id}, {"tracks", std::move(tracks)}}.dump() << '\n';
    }
}

void write_events(std::ostream& out, const std::vector<geo::EventRecord>& events) {
    out << "event_id,artist_id,venue_lat,venue_lon\n";
    for (const auto& e : events) {
        out << quote_csv(e.event_id) << ',' << quote_csv(e.artist_id) << ',' << format_double(e.venue.lat) << ','
            << format_double(e.venue.lon) << '\n';
    }
}

void write_cities(std::ostream& out, const std::vector<geo::CityCenter>& cities) {
    out << "name,lat,lon,radius_miles\n";
    for (const auto& c : cities) {
        out << quote_csv(c.name) << ',' << format_double(c.center.lat) << ',' << format_double(c.center.lon) << ','
            << format_double(c.radius_miles) << '\n';
    }
}

Dataset assemble(const std::vector<PlaylistRecord>& playlists, const std::vector<geo::EventRecord>& events,
                 const std::vector<geo::CityCenter>& cities) {
    std::vector<Interaction> pairs;
    std::vector<std::string> playlist_ids;
    TrackArtistMap owner;
    for (const auto& p : playlists) {
        playlist_ids.push_back(p.playlist_id);
        for (const auto& t : p.tracks) {
            const auto [it, inserted] = owner.emplace(t.track_id, t.artist_id);
            if (!inserted && it->second != t.artist_id) {
                throw DataError("track '" + t.track_id + "' listed under artists '" + it->second + "' and '" +
                                t.artist_id + "'");
            }
            pairs.push_back({p.playlist_id, t.track_id});
        }
    }

    Dataset ds;
    auto built = build_matrix(pairs, owner, playlist_ids);
    ds.matrix = std::move(built.matrix);
    ds.catalog = std::move(built.catalog);

    std::vector<geo::EventRecord> known;
    known.reserve(events.size());
    for (const auto& e : events) {
        if (ds.catalog.artist_index(e.artist_id) == Catalog::npos) {
            ++ds.unknown_artist_events;
        } else {
            known.push_back(e);
        }
    }
    if (ds.unknown_artist_events > 0) {
        log().warn("ignored {} event(s) referencing artists with no catalog tracks", ds.unknown_artist_events);
    }
    ds.locality = geo::build_locality_table(known, cities, ds.catalog);
    return ds;
}

Dataset load_dataset(const std::filesystem::path& playlists, const std::filesystem::path& events,
                     const std::filesystem::path& cities) {
    auto pin = open(playlists);
    auto ein = open(events);
    auto cin = open(cities);
    const auto p = read_playlists(pin, playlists.string());
    const auto e = read_events(ein, events.string());
    const auto c = read_cities(cin, cities.string());
    return assemble(p, e, c);
}

std::vector<Index> local_playlists(const InteractionMatrix& matrix, const geo::CityLocality& city) {
    std::vector<Index> out;
    for (Index t : city.tracks) {
        if (t >= matrix.num_tracks()) continue;
        for (Index p : matrix.column(t).indices) out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

CitySummary summarize(const InteractionMatrix& matrix, const Catalog& catalog, const geo::LocalityTable& locality,
                      const std::string& city) {
    const auto& loc = locality.city(city);
    CitySummary s;
    s.city = city;
    s.local_artists = loc.artists.size();
    s.local_tracks = loc.tracks.size();
    s.local_playlists = local_playlists(matrix, loc).size();

    std::size_t in_matrix = 0;
    std::size_t nnz = 0;
    for (Index t : loc.tracks) {
        if (t >= catalog.num_tracks()) throw DataError("locality table references unknown track index");
        if (t >= matrix.num_tracks()) continue;
        ++in_matrix;
        nnz += matrix.column_nnz(t);
    }
    const double cells = static_cast<double>(matrix.num_playlists()) * static_cast<double>(in_matrix);
    if (cells > 0.0) {
        s.sparsity = 1.0 - static_cast<double>(nnz) / cells;
        s.sparsity_defined = true;
    }
    return s;
}

}  // namespace longtail::ingest
