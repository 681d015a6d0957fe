#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "ggeval/graph.hpp"

namespace ggeval {

// JSON Lines dataset format. One graph per line:
//
//   {"id": "g0", "n": 5, "edges": [[0,1],[1,4]]}
//
// with an optional first line carrying set metadata:
//
//   {"_meta": {"family": "er", "seed": "7"}}
//
// Loading canonicalizes and validates every graph and rejects datasets
// with no graph records ("empty dataset"). Malformed lines raise
// ParseError naming the 1-based line number.

GraphSet load_dataset(const std::filesystem::path& path);
GraphSet parse_dataset(std::istream& in, const std::string& name);

void save_dataset(const GraphSet& set, const std::filesystem::path& path);
std::string serialize_dataset(const GraphSet& set);

// Writes content atomically: temp file in the destination directory,
// then rename. Readers never observe a half-written file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// Reads a whole file; IoError if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

}  // namespace ggeval
