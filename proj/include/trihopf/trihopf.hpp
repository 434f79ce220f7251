#ifndef TRIHOPF_TRIHOPF_HPP
#define TRIHOPF_TRIHOPF_HPP

#include "trihopf/fields.hpp"
#include "trihopf/linalg.hpp"
#include "trihopf/tensor.hpp"
#include "trihopf/report.hpp"
#include "trihopf/structures.hpp"
#include "trihopf/trilie.hpp"
#include "trihopf/hopf_compat.hpp"
#include "trihopf/constructions.hpp"
#include "trihopf/fundamental.hpp"
#include "trihopf/simplicity.hpp"
#include "trihopf/io.hpp"

#endif
