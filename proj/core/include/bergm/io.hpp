#ifndef BERGM_IO_HPP_
#define BERGM_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "bergm/attributes.hpp"
#include "bergm/graph.hpp"

namespace bergm {

// Edge list format:
//
//   n1 <int> n2 <int>
//   <i>\t<k>          one dyad per line, 1-based, mode-1 index first
//
// Blank lines and lines starting with '#' are skipped.

BipartiteNetwork read_edge_list(std::istream& in, std::string_view source = "<stream>");
BipartiteNetwork read_edge_list_file(const std::filesystem::path& path);
void write_edge_list(std::ostream& out, const BipartiteNetwork& net);

// Attribute table format (tab- or comma-delimited, detected from line 1):
//
//   id      gender  tenure
//   #type   cat     num
//   1       F       3.5
//
// The first column holds the global node id (mode-2 ids start at n1+1).
// Every node of the mode must appear exactly once.

AttributeTable read_attributes(std::istream& in, const BipartiteNetwork& net,
                               Mode mode, std::string_view source = "<stream>");
AttributeTable read_attributes_file(const std::filesystem::path& path,
                                    const BipartiteNetwork& net, Mode mode);
void write_attributes(std::ostream& out, const AttributeTable& table);

}  // namespace bergm

#endif  // BERGM_IO_HPP_
