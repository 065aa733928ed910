#include "tbf/io.hpp"

#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>

namespace tbf {

namespace {

void write_coord(std::ostream& os, const std::optional<Coord>& c) {
  if (c)
    os << " (" << c->first << "," << c->second << ")";
  else
    os << " -";
}

// Accepts "-", "(r,c)", or a bare integer (column pointers).
struct Token {
  bool null = true;
  bool pair = false;
  int a = 0, b = 0;
};

Token read_token(std::istream& is) {
  std::string s;
  if (!(is >> s)) throw std::runtime_error("truncated cell line");
  Token t;
  if (s == "-") return t;
  t.null = false;
  if (s.front() == '(') {
    char c1 = 0, c2 = 0, c3 = 0;
    std::istringstream in(s);
    if (!(in >> c1 >> t.a >> c2 >> t.b >> c3) || c1 != '(' || c2 != ',' || c3 != ')')
      throw std::runtime_error("bad coordinate token: " + s);
    t.pair = true;
    return t;
  }
  t.a = std::stoi(s);
  return t;
}

}  // namespace

void write_matrix_text(std::ostream& os, const PointerMatrix& M, const TagGrid* tags) {
  os << "matrix " << (M.type == MatrixType::ColPtr ? "colptr" : "cellptr") << " " << M.m << " "
     << M.n << "\n";
  for (int r = 1; r <= M.m; ++r)
    for (int c = 1; c <= M.n; ++c) {
      const Cell& cell = M.at(r, c);
      os << r << " " << c << " : " << cell.value;
      write_coord(os, cell.l);
      write_coord(os, cell.r);
      if (M.type == MatrixType::ColPtr) {
        if (cell.bcol)
          os << " " << *cell.bcol;
        else
          os << " -";
      } else {
        write_coord(os, cell.bcell);
      }
      os << "\n";
    }
  if (tags) {
    os << "tags\n";
    for (int r = 1; r <= M.m; ++r) {
      for (int c = 1; c <= M.n; ++c) os << tag_char(tags->at(r, c));
      os << "\n";
    }
  }
}

ParsedMatrix read_matrix_text(std::istream& is) {
  std::string word, kind;
  if (!(is >> word >> kind) || word != "matrix")
    throw std::runtime_error("expected a 'matrix' header");
  int m = 0, n = 0;
  if (!(is >> m >> n) || m < 1 || n < 1) throw std::runtime_error("bad matrix dimensions");
  MatrixType t;
  if (kind == "colptr")
    t = MatrixType::ColPtr;
  else if (kind == "cellptr")
    t = MatrixType::CellPtr;
  else
    throw std::runtime_error("unknown matrix kind: " + kind);
  ParsedMatrix out;
  out.M = PointerMatrix(t, m, n);
  for (long long i = 0; i < static_cast<long long>(m) * n; ++i) {
    int r = 0, c = 0;
    char colon = 0;
    int value = 0;
    if (!(is >> r >> c >> colon >> value) || colon != ':')
      throw std::runtime_error("bad cell line");
    if (r < 1 || r > m || c < 1 || c > n) throw std::runtime_error("cell position out of range");
    Cell& cell = out.M.at(r, c);
    cell.value = value;
    Token l = read_token(is), rr = read_token(is), b = read_token(is);
    cell.l.reset();
    cell.r.reset();
    if (!l.null) {
      if (!l.pair) throw std::runtime_error("left pointer must be a coordinate");
      cell.l = Coord{l.a, l.b};
    }
    if (!rr.null) {
      if (!rr.pair) throw std::runtime_error("right pointer must be a coordinate");
      cell.r = Coord{rr.a, rr.b};
    }
    if (!b.null) {
      if (t == MatrixType::ColPtr) {
        if (b.pair) throw std::runtime_error("column pointer must be a bare column");
        cell.bcol = b.a;
      } else {
        if (!b.pair) throw std::runtime_error("cell pointer must be a coordinate");
        cell.bcell = Coord{b.a, b.b};
      }
    }
  }
  if (is >> word) {
    if (word != "tags") throw std::runtime_error("unexpected trailer: " + word);
    out.tags = TagGrid(m, n);
    for (int r = 1; r <= m; ++r) {
      std::string row;
      if (!(is >> row) || static_cast<int>(row.size()) != n)
        throw std::runtime_error("bad tag row");
      for (int c = 1; c <= n; ++c) out.tags->at(r, c) = tag_from_char(row[c - 1]);
    }
  }
  return out;
}

void write_instance(const std::string& path, const BitString& x, const InstanceMeta& meta) {
  {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path);
    std::vector<std::uint8_t> bytes = x.to_packed();
    os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!os) throw std::runtime_error("short write to " + path);
  }
  std::ofstream ms(path + ".meta");
  if (!ms) throw std::runtime_error("cannot write " + path + ".meta");
  ms << "construction=" << meta.construction << "\n"
     << "n=" << meta.n << "\n"
     << "k=" << meta.k << "\n"
     << "b=" << meta.b << "\n"
     << "seed=" << meta.seed << "\n"
     << "nbits=" << meta.nbits << "\n";
}

BitString read_instance(const std::string& path, InstanceMeta* meta) {
  InstanceMeta m;
  {
    std::ifstream ms(path + ".meta");
    if (!ms) throw std::runtime_error("cannot read " + path + ".meta");
    std::string line;
    while (std::getline(ms, line)) {
      std::size_t eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(0, eq), val = line.substr(eq + 1);
      if (key == "construction")
        m.construction = val;
      else if (key == "n")
        m.n = std::stoi(val);
      else if (key == "k")
        m.k = std::stoi(val);
      else if (key == "b")
        m.b = std::stoll(val);
      else if (key == "seed")
        m.seed = std::stoull(val);
      else if (key == "nbits")
        m.nbits = std::stoll(val);
    }
  }
  if (m.nbits <= 0) throw std::runtime_error("sidecar is missing nbits");
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(is)),
                                  std::istreambuf_iterator<char>());
  if (static_cast<long long>(bytes.size()) !=
      (m.nbits + 7) / 8)
    throw std::runtime_error("payload size disagrees with the sidecar");
  if (meta) *meta = m;
  return BitString::from_packed(bytes, static_cast<std::size_t>(m.nbits));
}

}  // namespace tbf
