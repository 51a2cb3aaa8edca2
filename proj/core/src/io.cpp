#include "bergm/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bergm/error.hpp"

namespace bergm {

namespace {

std::string where(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool skippable(std::string_view line) {
  const auto t = trim(line);
  return t.empty() || t.front() == '#';
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto start = s.find_first_not_of(" \t\r", pos);
    if (start == std::string_view::npos) break;
    auto end = s.find_first_of(" \t\r", start);
    if (end == std::string_view::npos) end = s.size();
    out.push_back(s.substr(start, end - start));
    pos = end;
  }
  return out;
}

std::vector<std::string_view> split_on(std::string_view s, char delim) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto end = s.find(delim, pos);
    out.push_back(trim(s.substr(pos, end == std::string_view::npos ? s.npos : end - pos)));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

std::optional<long long> to_integer(std::string_view s) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<double> to_real(std::string_view s) {
  // std::from_chars for double is not available on every toolchain we target.
  std::string buf(s);
  std::istringstream is(buf);
  is.imbue(std::locale::classic());
  double v = 0;
  if (!(is >> v)) return std::nullopt;
  char rest = 0;
  if (is >> rest) return std::nullopt;
  return v;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  return in;
}

}  // namespace

BipartiteNetwork read_edge_list(std::istream& in, std::string_view source) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<BipartiteNetwork> net;
  std::vector<Dyad> dyads;
  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    const auto fields = split_ws(line);
    if (!net) {
      if (fields.size() != 4 || fields[0] != "n1" || fields[2] != "n2") {
        throw ParseError("expected header 'n1 <int> n2 <int>'", where(source, lineno));
      }
      const auto n1 = to_integer(fields[1]);
      const auto n2 = to_integer(fields[3]);
      if (!n1 || !n2 || *n1 < 0 || *n2 < 0) {
        throw ParseError("node counts must be nonnegative integers",
                         where(source, lineno));
      }
      net.emplace(static_cast<int>(*n1), static_cast<int>(*n2));
      continue;
    }
    if (fields.size() != 2) {
      throw ParseError("expected two fields '<i> <k>'", where(source, lineno));
    }
    const auto i = to_integer(fields[0]);
    const auto k = to_integer(fields[1]);
    if (!i || !k) {
      throw ParseError("node ids must be integers", where(source, lineno));
    }
    const Dyad d{static_cast<Node>(*i), static_cast<Node>(*k)};
    try {
      const Dyad c = net->canonical(d.i, d.k);
      if (c.i != d.i) throw GraphError("mode-1 node must come first");
      if (!net->has_edge(d.i, d.k)) net->toggle(d.i, d.k);
    } catch (const GraphError& e) {
      throw ParseError(e.what(), where(source, lineno));
    }
  }
  if (in.bad()) throw IoError("read error in " + std::string(source));
  if (!net) throw ParseError("missing 'n1 <int> n2 <int>' header", std::string(source));
  return std::move(*net);
}

BipartiteNetwork read_edge_list_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_edge_list(in, path.string());
}

void write_edge_list(std::ostream& out, const BipartiteNetwork& net) {
  out << "n1 " << net.n1() << " n2 " << net.n2() << '\n';
  for (const Dyad& d : net.sorted_edges()) out << d.i << '\t' << d.k << '\n';
}

AttributeTable read_attributes(std::istream& in, const BipartiteNetwork& net,
                               Mode mode, std::string_view source) {
  std::string line;
  std::size_t lineno = 0;

  const auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!trim(line).empty()) return true;
    }
    return false;
  };

  if (!next_line()) throw ParseError("empty attribute file", std::string(source));
  const char delim = line.find('\t') != std::string::npos ? '\t' : ',';
  std::vector<std::string> names;
  for (auto f : split_on(line, delim)) names.emplace_back(f);
  if (names.size() < 2) {
    throw ParseError("header needs an id column and at least one attribute",
                     where(source, lineno));
  }

  if (!next_line()) {
    throw ParseError("missing '#type' declaration line", where(source, lineno + 1));
  }
  const auto decl = split_on(line, delim);
  if (decl.empty() || (decl[0] != "#type" && decl[0] != "#types")) {
    throw ParseError("second line must be the '#type' declaration",
                     where(source, lineno));
  }
  if (decl.size() != names.size()) {
    throw ParseError("type declaration has " + std::to_string(decl.size() - 1) +
                         " entries for " + std::to_string(names.size() - 1) +
                         " columns",
                     where(source, lineno));
  }
  std::vector<ColumnType> types;
  for (std::size_t c = 1; c < decl.size(); ++c) {
    if (decl[c] == "cat") {
      types.push_back(ColumnType::categorical);
    } else if (decl[c] == "num") {
      types.push_back(ColumnType::numeric);
    } else {
      throw ParseError("column '" + names[c] + "' has unknown type '" +
                           std::string(decl[c]) + "' (expected cat or num)",
                       where(source, lineno));
    }
  }

  AttributeTable table = AttributeTable::for_mode(net, mode);
  const auto count = static_cast<std::size_t>(table.node_count());
  const std::size_t ncol = names.size() - 1;
  std::vector<std::vector<std::string>> cat(ncol, std::vector<std::string>(count));
  std::vector<std::vector<double>> num(ncol, std::vector<double>(count, 0.0));
  std::vector<bool> seen(count, false);

  while (next_line()) {
    if (trim(line).front() == '#') continue;
    const auto fields = split_on(line, delim);
    if (fields.size() != names.size()) {
      throw ParseError("expected " + std::to_string(names.size()) + " fields, got " +
                           std::to_string(fields.size()),
                       where(source, lineno));
    }
    const auto id = to_integer(fields[0]);
    if (!id || !table.contains(static_cast<Node>(*id))) {
      throw ParseError("node id '" + std::string(fields[0]) + "' is not a " +
                           (mode == Mode::first ? "mode-1" : "mode-2") + " node",
                       where(source, lineno));
    }
    const auto idx = table.local_index(static_cast<Node>(*id));
    if (seen[idx]) {
      throw ParseError("duplicate row for node " + std::string(fields[0]),
                       where(source, lineno));
    }
    seen[idx] = true;
    for (std::size_t c = 0; c < ncol; ++c) {
      const auto value = fields[c + 1];
      if (value.empty() || value == "NA") {
        throw ParseError("missing value in column '" + names[c + 1] + "'",
                         where(source, lineno));
      }
      if (types[c] == ColumnType::categorical) {
        cat[c][idx] = std::string(value);
      } else {
        const auto v = to_real(value);
        if (!v) {
          throw ParseError("column '" + names[c + 1] + "' expects a number, got '" +
                               std::string(value) + "'",
                           where(source, lineno));
        }
        num[c][idx] = *v;
      }
    }
  }
  if (in.bad()) throw IoError("read error in " + std::string(source));
  for (std::size_t n = 0; n < count; ++n) {
    if (!seen[n]) {
      throw ParseError("no row for node " +
                           std::to_string(table.first_node() + static_cast<Node>(n)),
                       std::string(source));
    }
  }
  for (std::size_t c = 0; c < ncol; ++c) {
    if (types[c] == ColumnType::categorical) {
      table.add_categorical(names[c + 1], cat[c]);
    } else {
      table.add_numeric(names[c + 1], std::move(num[c]));
    }
  }
  return table;
}

AttributeTable read_attributes_file(const std::filesystem::path& path,
                                    const BipartiteNetwork& net, Mode mode) {
  auto in = open_input(path);
  return read_attributes(in, net, mode, path.string());
}

void write_attributes(std::ostream& out, const AttributeTable& table) {
  out << "id";
  for (const auto& c : table.columns()) out << '\t' << c.name;
  out << "\n#type";
  for (const auto& c : table.columns()) {
    out << '\t' << (c.type == ColumnType::categorical ? "cat" : "num");
  }
  out << '\n';
  const auto old_precision = out.precision(17);
  for (int n = 0; n < table.node_count(); ++n) {
    out << table.first_node() + n;
    for (const auto& c : table.columns()) {
      out << '\t';
      if (c.type == ColumnType::categorical) {
        out << c.levels[static_cast<std::size_t>(c.codes[static_cast<std::size_t>(n)])];
      } else {
        out << c.values[static_cast<std::size_t>(n)];
      }
    }
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace bergm
