#pragma once

#include "qcf/rational.hpp"
#include "qcf/cyclotomic.hpp"
#include "qcf/qcombinatorics.hpp"
#include "qcf/linalg.hpp"
#include "qcf/element.hpp"
#include "qcf/coalgebra_table.hpp"
#include "qcf/quiver.hpp"
#include "qcf/poset.hpp"
#include "qcf/families.hpp"
#include "qcf/balanced.hpp"
#include "qcf/frobenius.hpp"
#include "qcf/classify.hpp"
#include "qcf/group.hpp"
#include "qcf/hopf.hpp"
#include "qcf/quantum_line.hpp"
#include "qcf/dsl.hpp"
