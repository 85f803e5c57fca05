#pragma once

#include "atp/brackets.hpp"
#include "atp/cohomology.hpp"
#include "atp/exterior.hpp"
#include "atp/gallery.hpp"
#include "atp/identities.hpp"
#include "atp/printer.hpp"
#include "atp/scalar.hpp"
#include "atp/spec_file.hpp"
#include "atp/structures.hpp"
