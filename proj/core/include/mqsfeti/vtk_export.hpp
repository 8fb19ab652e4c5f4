#pragma once

#include "mqsfeti/fields.hpp"
#include "mqsfeti/solve_mono.hpp"

#include <string>

namespace mqsfeti {

/// Writes a legacy-ASCII VTK 3.0 unstructured grid with per-cell data:
/// vectors B_re/B_im, integer subdomain label (1 = conductor, 0 = insulator),
/// and vectors E_re/E_im (zero outside the conductor; omitted arrays are not
/// allowed by the format). Numeric formatting is fixed, so output bytes are a
/// pure function of the inputs. Throws IoError on unwritable paths.
void export_fields(const std::string& path, const Mesh& mesh, const EntityLabels& labels,
                   const BField& b, const ConductorEField* e);

} // namespace mqsfeti
