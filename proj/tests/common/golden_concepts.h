#pragma once

#include <string>
#include <vector>

#include "hive/skos.h"

namespace hive::testing {

struct GoldenConcept {
  std::string name;
  Concept value;
};

inline std::vector<GoldenConcept> golden_concepts() {
  Concept minimal;
  minimal.uri = "http://example.org/materials#Material";
  minimal.pref_label = "Material";
  minimal.ontology_id = "materials";

  Concept full;
  full.uri = "http://example.org/materials#Zeolite";
  full.pref_label = "Zeolite";
  full.alt_labels = {"molecular sieve", "zeolitic material"};
  full.notes = {"Microporous aluminosilicate used for gas separation."};
  full.broader = {"http://example.org/materials#Catalyst", "http://example.org/materials#Material"};
  full.narrower = {"http://example.org/materials#ZSM-5"};
  full.related = {"http://example.org/materials#MOF"};
  full.ontology_id = "materials";

  Concept tricky;
  tricky.uri = "http://example.org/chem?id=a&b=\"c\"";
  tricky.pref_label = "Na<sub>2</sub>O & \"oxide\" 'α-phase'";
  tricky.alt_labels = {"sodium oxide", "  padded\tlabel  "};
  tricky.notes = {"line one\nline two\r\nend", "Ångström-scale > 5 Å"};
  tricky.related = {"http://example.org/chem#Na2O2"};
  tricky.ontology_id = "chem";

  return {{"minimal", minimal}, {"full", full}, {"tricky", tricky}};
}

}  // namespace hive::testing
