#pragma once

#include <string>

#include "electctl/hardness.hpp"

namespace electctl {

// Line-oriented election format:
//   candidates = p, a, b
//   axis = a < p < b            (optional)
//   ballot_type = ordinal        (or approval)
//   [registered]
//   2: p > a > b
//   [unregistered_voters]
//   1: {a, b}                    (approval ballots)
//   [unregistered_candidates]
//   x, y
// '#' starts a comment; a count prefix expands to that many identical ballots.
Election parse_election(const std::string& text);
std::string serialize_election(const Election& e);

// ground = b1, b2, ..., b9
// set = b1 b2 b3
X3CInstance parse_x3c(const std::string& text);
std::string serialize_x3c(const X3CInstance& src);

// left = x1, x2
// right = y1, y2
// edge = x1 y1
BipartiteGraph parse_bipartite(const std::string& text);
std::string serialize_bipartite(const BipartiteGraph& g);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace electctl
