#pragma once

// JSON documents for groups and presentations, and DOT export of quivers.
//
// Matrix entries and coefficients are strings in the Cyclo text form over the
// conductor named by the enclosing document.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mckay/constructions.hpp"

namespace mckay {

using Json = nlohmann::ordered_json;

struct IrrepRecord {
  std::string label;
  std::size_t dim = 0;
  std::vector<CycloMatrix> gen_images;  // in the document's generator order
};

struct GroupDocument {
  std::string name;
  GroupSpec spec;
  std::optional<std::vector<IrrepRecord>> irreps;
};

/// Throws ParseError for malformed JSON or fields of the wrong type,
/// ValidationError for inconsistent shapes.
GroupDocument parse_group_document(const std::string& text);
GroupDocument load_group_document(const std::string& path);
Json group_document_json(const GroupDocument& doc);

/// Irreps from the document, or the abelian characters when the section is
/// absent.  Throws ValidationError for a non-abelian group without irreps.
IrrepSet resolve_irreps(const GroupPtr& group, const GroupDocument& doc);

Json matrix_json(const CycloMatrix& m, int conductor);
CycloMatrix parse_matrix(const Json& j, int conductor);

/// Least common conductor of the coefficients and arrow data in a presentation.
int presentation_conductor(const GinzburgPresentation& pres);

/// Terms {coefficient, start, path} over the given conductor.
Json path_element_json(const PathElement& e, int conductor);

Json presentation_json(const GinzburgPresentation& pres);
/// Adds `irreps`, `lambda` and `pairing` sections.
Json mckay_json(const McKayQP& qp);

Json h0_json(const H0Presentation& h0);

struct PresentationDocument {
  GinzburgPresentation pres;
  std::vector<PairingBlock> pairing;
  std::map<Path, Cyclo> lambda;
};

PresentationDocument parse_presentation(const std::string& text);
PresentationDocument load_presentation(const std::string& path);

struct DotOptions {
  bool show_all = false;  // include stars and t-loops
  std::string name = "Q";
};

std::string quiver_dot(const GradedQuiver& q, const DotOptions& opts = {});

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace mckay
