#include "dlcc/ntriples.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "dlcc/error.hpp"

namespace dlcc {

namespace {

bool needsEscape(unsigned char c) {
  switch (c) {
    case '{': case '}': case '|': case '^': case '`': case '\\':
      return true;
    default:
      return false;
  }
}

void appendUtf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class LineParser {
 public:
  LineParser(std::string_view line, std::size_t lineNo) : line_(line), lineNo_(lineNo) {}

  void skipWs() {
    while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t')) ++pos_;
  }
  bool atEnd() const { return pos_ >= line_.size(); }
  char peek() const { return line_[pos_]; }

  Uri iri(const char* role) {
    skipWs();
    if (atEnd()) fail(std::string("expected ") + role);
    const char c = peek();
    if (c == '"') throw UnsupportedTermError(lineNo_, std::string("literal ") + role + " not supported");
    if (c == '_') throw UnsupportedTermError(lineNo_, std::string("blank node ") + role + " not supported");
    if (c != '<') fail(std::string("expected IRI for ") + role);
    ++pos_;
    std::string value;
    while (true) {
      if (atEnd()) fail("unterminated IRI");
      const char ch = line_[pos_++];
      if (ch == '>') break;
      if (ch == '\\') value += unescape();
      else value += ch;
    }
    auto u = Uri::tryParse(value);
    if (!u) fail("invalid IRI <" + value + ">");
    return *u;
  }

  void expectDot() {
    skipWs();
    if (atEnd() || peek() != '.') fail("missing terminating '.'");
    ++pos_;
    skipWs();
    if (!atEnd() && peek() != '#') fail("trailing content after '.'");
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(lineNo_, what); }

 private:
  std::string unescape() {
    if (atEnd()) fail("dangling escape");
    const char kind = line_[pos_++];
    std::size_t digits = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
    if (digits == 0) fail("invalid escape in IRI");
    if (pos_ + digits > line_.size()) fail("truncated escape in IRI");
    std::uint32_t cp = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      const char h = line_[pos_++];
      cp <<= 4;
      if (h >= '0' && h <= '9') cp |= h - '0';
      else if (h >= 'a' && h <= 'f') cp |= h - 'a' + 10;
      else if (h >= 'A' && h <= 'F') cp |= h - 'A' + 10;
      else fail("invalid hex digit in escape");
    }
    std::string out;
    appendUtf8(out, cp);
    return out;
  }

  std::string_view line_;
  std::size_t lineNo_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string formatIriRef(const Uri& u) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(u.str().size() + 2);
  out += '<';
  for (unsigned char c : u.str()) {
    if (needsEscape(c)) {
      out += "\\u00";
      out += kHex[c >> 4];
      out += kHex[c & 0xF];
    } else {
      out += static_cast<char>(c);
    }
  }
  out += '>';
  return out;
}

void writeNTriples(const KnowledgeGraph& g, std::ostream& out) {
  // Sorting the formatted lines (not the Uri tuples) keeps the byte order
  // independent of how escaping shifts characters around.
  std::vector<std::string> lines;
  lines.reserve(g.size());
  for (const auto& t : g.triples()) {
    lines.push_back(formatIriRef(t.subject) + ' ' + formatIriRef(t.relation) + ' ' +
                    formatIriRef(t.object) + " .");
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& line : lines) out << line << '\n';
}

void writeNTriples(const KnowledgeGraph& g, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error("cannot write " + file.string());
  writeNTriples(g, out);
  if (!out) throw Error("write failed: " + file.string());
}

KnowledgeGraph parseNTriples(std::istream& in, Uri typeRelation) {
  KnowledgeGraph g(std::move(typeRelation));
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    LineParser p(line, lineNo);
    p.skipWs();
    if (p.atEnd() || p.peek() == '#') continue;
    Uri s = p.iri("subject");
    Uri r = p.iri("predicate");
    Uri o = p.iri("object");
    p.expectDot();
    g.add(Triple{std::move(s), std::move(r), std::move(o)});
  }
  return g;
}

KnowledgeGraph parseNTriples(const std::filesystem::path& file, Uri typeRelation) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot read " + file.string());
  return parseNTriples(in, std::move(typeRelation));
}

}  // namespace dlcc
