#pragma once

#include <map>
#include <string>
#include <string_view>

#include "hive/rdf.h"

namespace hive::detail {

// Recursive-descent reader for Turtle. With ntriples=true it accepts only
// the N-Triples subset: absolute IRIs, labelled blank nodes, short-quoted
// literals and one triple per statement.
class TurtleReader {
 public:
  TurtleReader(std::string_view doc, const TripleSink& sink, std::string_view base, bool ntriples);

  void run();

 private:
  // Statements
  void statement();
  void directive_prefix(bool sparql_style);
  void directive_base(bool sparql_style);
  void triples();
  void predicate_object_list(const Term& subject);
  void object_list(const Term& subject, const Term& predicate);

  // Terms
  Term subject_term();
  Term predicate_term();
  Term object_term();
  Term blank_node_property_list();
  Term collection();
  Term literal();
  Term numeric_literal();
  std::string iri_ref();
  std::string prefixed_name();
  std::string blank_label();
  std::string quoted_string();
  std::string language_tag();

  // Cursor
  bool at_end() const { return pos_ >= doc_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < doc_.size() ? doc_[pos_ + ahead] : '\0';
  }
  char get();
  void skip_ws();
  void expect(char c);
  bool match_keyword(std::string_view kw, bool case_insensitive);
  char32_t read_hex(int digits);
  [[noreturn]] void fail(const std::string& message) const;

  std::string fresh_blank();
  void emit(const Term& s, const Term& p, const Term& o);

  std::string_view doc_;
  const TripleSink& sink_;
  std::string base_;
  bool ntriples_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  std::map<std::string, std::string, std::less<>> prefixes_;
  std::size_t blank_counter_ = 0;
};

}  // namespace hive::detail
