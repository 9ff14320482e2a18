#pragma once

#include "orbitopal/bitset.hpp"
#include "orbitopal/shape.hpp"
#include "orbitopal/face.hpp"
#include "orbitopal/face_io.hpp"
#include "orbitopal/vertices.hpp"
#include "orbitopal/fixing.hpp"
#include "orbitopal/packing.hpp"
#include "orbitopal/linear.hpp"
#include "orbitopal/sci.hpp"
#include "orbitopal/sequential.hpp"
#include "orbitopal/covering.hpp"
#include "orbitopal/lp.hpp"
#include "orbitopal/partition.hpp"
#include "orbitopal/branch_and_cut.hpp"
#include "orbitopal/bench.hpp"
