// SPDX-License-Identifier: Apache-2.0
//
// Record persistence and table emitters.
//
// Records CSV, one line per canonical predicate in increasing predicate_id:
//   mask,arity,mode,status,families,theorems,flags,certificate,provenance
// mask is the predicate_id in hex, families/theorems are the bit sets of
// ClassificationRecord, flags holds 'c' (all theorems decided), 'i'
// (inconclusive query) and 's' (Split reading differs), certificate is the
// JSON payload and provenance is "direct" or "from:<mask>".
// A leading "# k=<k> mode=<mode> complete=<0|1>" line carries the sweep.

#pragma once

#include <string>
#include <vector>

#include "psat/classification.hpp"

namespace psat {

std::string csv_quote(const std::string& field);
std::vector<std::string> csv_split(const std::string& line);

std::string records_csv_header();
std::string record_csv_line(const ClassificationRecord& r);
ClassificationRecord parse_record_line(const std::string& line);

std::string records_csv(const Sweep& s);
Sweep parse_records_csv(const std::string& text);
void write_records(const std::string& path, const Sweep& s);
Sweep read_records(const std::string& path);

// Extremal tables. Marks are "x" or empty; Dep is "exclusive/total".
std::string maximal_csv(const Extremal& e, Mode m);
std::string minimal_csv(const Extremal& e, Mode m);
std::string extremal_json(const Extremal& e, Mode m);

// Per |A|: positive, negative and unknown counts over canonical predicates.
std::string histogram_csv(const Sweep& s);

// PSAT_CACHE_DIR, or empty.
std::string cache_dir_from_env();

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace psat
