#include "dlcc/sparql.hpp"

#include <algorithm>
#include <cctype>

#include "json.hpp"

#include "dlcc/error.hpp"
#include "dlcc/gold_io.hpp"

namespace dlcc {

namespace fs = std::filesystem;

std::string polarityName(Polarity p) {
  switch (p) {
    case Polarity::Positive: return "positive";
    case Polarity::Negative: return "negative";
    case Polarity::HardNegative: return "hard_negative";
  }
  return "?";
}

std::optional<Polarity> parsePolarity(std::string_view name) {
  for (Polarity p : kAllPolarities) {
    if (polarityName(p) == name) return p;
  }
  if (name == "hardNegative" || name == "hard") return Polarity::HardNegative;
  return std::nullopt;
}

bool isKnownDomain(std::string_view domain) {
  return std::find(kDomains.begin(), kDomains.end(), domain) != kDomains.end();
}

std::string renderQuery(const QuerySpec& spec) {
  const std::string where =
      familyName(spec.testCase) + "/" + spec.domain + "/" + polarityName(spec.polarity);
  const std::string& t = spec.templateText;
  std::string out;
  out.reserve(t.size() + 64);
  std::size_t pos = 0;
  while (true) {
    const std::size_t open = t.find("${", pos);
    if (open == std::string::npos) break;
    const std::size_t close = t.find('}', open);
    if (close == std::string::npos) throw RenderError(where + ": unterminated placeholder");
    const std::string name = t.substr(open + 2, close - open - 2);
    auto it = spec.bindings.find(name);
    if (it == spec.bindings.end() || it->second.empty())
      throw RenderError(where + ": unbound placeholder ${" + name + "}");
    out.append(t, pos, open - pos);
    out += it->second;
    pos = close + 1;
  }
  out.append(t, pos, std::string::npos);
  return out;
}

namespace {

enum class Tok { Space, Term, TypeKeyword, Other };

struct Token {
  Tok kind;
  std::size_t begin;
  std::size_t end;
};

bool nameChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; }

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const std::size_t start = i;
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::Space, start, i});
    } else if (c == '$' && i + 1 < s.size() && s[i + 1] == '{') {
      const std::size_t close = s.find('}', i);
      i = close == std::string_view::npos ? s.size() : close + 1;
      out.push_back({Tok::Term, start, i});
    } else if ((c == '?' || c == '$') && i + 1 < s.size() && nameChar(s[i + 1])) {
      ++i;
      while (i < s.size() && nameChar(s[i])) ++i;
      out.push_back({Tok::Term, start, i});
    } else if (c == '<' && i + 1 < s.size() && !std::isspace(static_cast<unsigned char>(s[i + 1]))) {
      std::size_t j = i + 1;
      while (j < s.size() && s[j] != '>' && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && s[j] == '>') {
        i = j + 1;
        out.push_back({Tok::Term, start, i});
      } else {
        ++i;
        out.push_back({Tok::Other, start, i});
      }
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && nameChar(s[i])) ++i;
      if (i < s.size() && s[i] == ':') {
        ++i;
        while (i < s.size() && (nameChar(s[i]) || s[i] == '.' || s[i] == '%')) ++i;
        while (s[i - 1] == '.') --i;  // a trailing dot ends the pattern
        out.push_back({Tok::Term, start, i});
      } else if (s.substr(start, i - start) == "a") {
        out.push_back({Tok::TypeKeyword, start, i});
      } else {
        out.push_back({Tok::Other, start, i});
      }
    } else {
      ++i;
      out.push_back({Tok::Other, start, i});
    }
  }
  return out;
}

}  // namespace

std::string invertTemplate(std::string_view text) {
  const auto tokens = lex(text);
  std::vector<std::size_t> sig;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].kind != Tok::Space) sig.push_back(i);
  }
  std::vector<std::string> pieces;
  for (const auto& t : tokens) pieces.emplace_back(text.substr(t.begin, t.end - t.begin));

  for (std::size_t k = 0; k + 2 < sig.size();) {
    const auto& s = tokens[sig[k]];
    const auto& p = tokens[sig[k + 1]];
    const auto& o = tokens[sig[k + 2]];
    const bool isPredicate = p.kind == Tok::Term || p.kind == Tok::TypeKeyword;
    if (s.kind == Tok::Term && isPredicate && o.kind == Tok::Term) {
      if (p.kind != Tok::TypeKeyword) std::swap(pieces[sig[k]], pieces[sig[k + 2]]);
      k += 3;
    } else {
      ++k;
    }
  }
  std::string out;
  for (const auto& piece : pieces) out += piece;
  return out;
}

std::string normalizeWhitespace(std::string_view text) {
  std::string out;
  bool pendingSpace = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pendingSpace = !out.empty();
    } else {
      if (pendingSpace) out += ' ';
      pendingSpace = false;
      out += c;
    }
  }
  return out;
}

std::string withPrefixes(std::string_view query) {
  std::string out =
      "PREFIX dbo: <http://dbpedia.org/ontology/>\n"
      "PREFIX dbr: <http://dbpedia.org/resource/>\n";
  out += query;
  return out;
}

namespace {

// Inverse families borrow the forward family's files.
Family templateSource(Family f) {
  switch (f) {
    case Family::Tc02: return Family::Tc01;
    case Family::Tc08: return Family::Tc07;
    case Family::Tc10: return Family::Tc09;
    case Family::Tc12: return Family::Tc11;
    default: return f;
  }
}

}  // namespace

QueryCatalog::QueryCatalog(fs::path dir) : dir_(std::move(dir)) {
  if (!fs::is_directory(dir_ / "templates") || !fs::is_directory(dir_ / "domains"))
    throw ValidationError("query directory lacks templates/ or domains/: " + dir_.string());
}

bool QueryCatalog::hasHardNegative(Family f) const {
  return fs::exists(dir_ / "templates" / familyName(templateSource(f)) / "hard_negative.sparql");
}

std::string QueryCatalog::templateFor(Family f, Polarity p) const {
  const Family source = templateSource(f);
  const fs::path file =
      dir_ / "templates" / familyName(source) / (polarityName(p) + ".sparql");
  if (!fs::exists(file)) {
    if (p == Polarity::HardNegative)
      throw RenderError(familyName(f) + ": no hard-negative query is defined (none-defined)");
    throw RenderError(familyName(f) + ": missing template " + file.string());
  }
  std::string text = readText(file);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  return source == f ? text : invertTemplate(text);
}

std::map<std::string, std::string> QueryCatalog::bindingsFor(Family f,
                                                             std::string_view domain) const {
  if (!isKnownDomain(domain)) throw ValidationError("unknown domain: " + std::string(domain));
  const fs::path file = dir_ / "domains" / (std::string(domain) + ".json");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(readText(file));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(file.string() + ": " + e.what());
  }
  std::map<std::string, std::string> out;
  if (j.contains("class")) out["class"] = j["class"].get<std::string>();
  const std::string tc = familyName(f);
  if (j.contains("testCases") && j["testCases"].contains(tc)) {
    for (const auto& [k, v] : j["testCases"][tc].items()) out[k] = v.get<std::string>();
  }
  return out;
}

QuerySpec QueryCatalog::spec(Family f, std::string_view domain, Polarity p) const {
  QuerySpec s;
  s.testCase = f;
  s.domain = std::string(domain);
  s.polarity = p;
  s.templateText = templateFor(f, p);
  s.bindings = bindingsFor(f, domain);
  return s;
}

}  // namespace dlcc
