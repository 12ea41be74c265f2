#pragma once

#include <iosfwd>
#include <vector>

#include "longtail/eval.hpp"
#include "longtail/ingest.hpp"

namespace longtail::report {

/// One record per city x model x level x metric:
/// city,model,level,metric,mean,se,folds,error
/// `folds` holds the per-fold values separated by ';'. Failed cells carry an
/// empty mean/se/folds and the error text. Numbers use the shortest
/// round-trip representation, so reruns are byte-identical.
void write_csv(std::ostream& out, const eval::EvalReport& report);

/// Fixed-width tables, one per level, with "mean (se)" cells: a row per
/// metric and model, a column per city plus the average of city means.
void write_table(std::ostream& out, const eval::EvalReport& report);

/// city,local_playlists,local_artists,local_tracks,sparsity,sparsity_defined
void write_locality_summary(std::ostream& out, const std::vector<ingest::CitySummary>& rows);

}  // namespace longtail::report
