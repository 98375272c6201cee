#pragma once

#include <string>

#include "json.hpp"
#include "quotlab/free_element.hpp"
#include "quotlab/matrix.hpp"
#include "quotlab/scalar.hpp"

namespace quotlab {

using Json = nlohmann::json;

// Rationals serialize as strings "p/q" in lowest terms ("3", "-2/7");
// prime-field values as plain integers, with the modulus recorded once at
// the top level of the enclosing document.
Json scalar_to_json(const Scalar& s);
// Accepts both encodings (and plain JSON numbers for rationals).
Scalar scalar_from_json(const Json& j, const Field& f);

// Row-major nested arrays.
Json matrix_to_json(const ExactMatrix& m);
ExactMatrix matrix_from_json(const Json& j, const Field& f);

// Field tag: "rational" or {"prime": p}.
Json field_to_json(const Field& f);
Field field_from_json(const Json& j);

// Term lists [{"coeff": "...", "monomial": [a1..an], "gen": j}] with the
// generator index 1-based on the wire.
template <typename Tag>
Json element_to_json(const BasicElement<Tag>& el) {
  Json arr = Json::array();
  for (const Term& t : el.terms()) {
    Json term;
    term["coeff"] = scalar_to_json(t.coeff);
    term["monomial"] = t.mon.exps();
    term["gen"] = t.gen + 1;
    arr.push_back(std::move(term));
  }
  return arr;
}

template <typename Tag>
BasicElement<Tag> element_from_json(const Json& j, int n,
                                    const std::vector<int>& genDegrees,
                                    const Field& f) {
  if (!j.is_array()) throw InputError("expected an array of terms");
  BasicElement<Tag> el(n, genDegrees);
  for (const Json& term : j) {
    if (!term.contains("coeff") || !term.contains("monomial") || !term.contains("gen")) {
      throw InputError("term needs \"coeff\", \"monomial\" and \"gen\"");
    }
    Scalar c = scalar_from_json(term["coeff"], f);
    std::vector<int> exps = term["monomial"].get<std::vector<int>>();
    if (static_cast<int>(exps.size()) != n) {
      throw InputError("monomial has " + std::to_string(exps.size()) +
                       " exponents, expected " + std::to_string(n));
    }
    int gen = term["gen"].get<int>() - 1;
    if (gen < 0 || gen >= static_cast<int>(genDegrees.size())) {
      throw InputError("generator index out of range: " + std::to_string(gen + 1));
    }
    el.addTerm(std::move(c), gen, Monomial(std::move(exps)));
  }
  return el;
}

// Parses a file, wrapping parse failures into InputError with the location.
Json load_json_file(const std::string& path);
Json parse_json_text(const std::string& text);

}  // namespace quotlab
