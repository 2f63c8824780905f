#include <fstream>
#include <sstream>

#include "ontokms/error.hpp"
#include "ontokms/rdf/serializer.hpp"

namespace ontokms::rdf {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for reading",
                {{"path", path.string()}});
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw Error(ErrorCode::Io, "failed reading '" + path.string() + "'",
                {{"path", path.string()}});
  }
  return std::move(buffer).str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(ErrorCode::Io, "cannot open '" + tmp.string() + "' for writing",
                  {{"path", tmp.string()}});
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      throw Error(ErrorCode::Io, "failed writing '" + tmp.string() + "'",
                  {{"path", tmp.string()}});
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw Error(ErrorCode::Io,
                "cannot replace '" + path.string() + "': " + ec.message(),
                {{"path", path.string()}});
  }
}

void save_snapshot(const TripleStore& store, const std::filesystem::path& path) {
  write_file(path, serialize(store, Syntax::NTriples));
}

TripleStore load_snapshot(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  TripleStore store;
  for (const Triple& t : parse_ntriples(text)) store.insert(t);
  return store;
}

}  // namespace ontokms::rdf
