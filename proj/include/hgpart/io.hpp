#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hgpart/hypergraph.hpp"

namespace hgpart {

/// Parses an hMetis .hgr file. Header "m n [fmt]" with fmt in {1, 10, 11};
/// vertex ids in the file are 1-based. Lines starting with '%' and blank
/// lines are skipped. Throws ParseError with the offending line number.
Hypergraph parse_hmetis(std::string_view text);
Hypergraph read_hmetis(const std::filesystem::path& path);

/// Writes the smallest fmt that carries all non-unit weights.
std::string write_hmetis(const Hypergraph& h);

/// One block id per line, exactly n lines, ids in [0, k).
std::vector<BlockId> parse_partition(std::string_view text, std::size_t n, BlockId k);
std::vector<BlockId> read_partition(const std::filesystem::path& path, std::size_t n,
                                    BlockId k);
std::string write_partition(std::span<const BlockId> assignment);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace hgpart
