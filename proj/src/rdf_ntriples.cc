#include "turtle_reader.h"

namespace hive::detail {

void parse_ntriples(std::string_view document, const TripleSink& sink) {
  TurtleReader(document, sink, {}, true).run();
}

}  // namespace hive::detail
