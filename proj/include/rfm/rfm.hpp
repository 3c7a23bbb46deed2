#pragma once

#include <rfm/construct.hpp>
#include <rfm/decompose.hpp>
#include <rfm/descriptor.hpp>
#include <rfm/error.hpp>
#include <rfm/families.hpp>
#include <rfm/graph.hpp>
#include <rfm/invariants.hpp>
#include <rfm/matrix2.hpp>
#include <rfm/render.hpp>
#include <rfm/smith.hpp>
