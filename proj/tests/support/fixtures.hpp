#pragma once

// The naive-reverse programs used throughout the tests, and helpers to build
// expected tables from text.

#include <string>
#include <vector>

#include "acc/engine.hpp"
#include "acc/store.hpp"

namespace fixtures {

inline const char* const kP0 =
    "rev(X,Y) :- X = [], Y = [].\n"
    "rev(X,Y) :- X = [U|V], rev(V,W), T = [U], app(W,T,Y).\n"
    "app(X,Y,Z) :- X = [], Y = Z.\n"
    "app(X,Y,Z) :- X = [U|V], Z = [U|W], app(V,Y,W).\n";

// Two base cases added to app.
inline const char* const kP1 =
    "rev(X,Y) :- X = [], Y = [].\n"
    "rev(X,Y) :- X = [U|V], rev(V,W), T = [U], app(W,T,Y).\n"
    "app(X,Y,Z) :- X = [], Y = Z.\n"
    "app(X,Y,Z) :- X = [U], Z = [U|Y].\n"
    "app(X,Y,Z) :- X = [U,V], Z = [U,V|Y].\n"
    "app(X,Y,Z) :- X = [U|V], Z = [U|W], app(V,Y,W).\n";

// app replaced by a specialised definition.
inline const char* const kP2 =
    "rev(X,Y) :- X = [], Y = [].\n"
    "rev(X,Y) :- X = [U|V], rev(V,W), T = [U], app(W,T,Y).\n"
    "app(X,Y,Z) :- X = [], Y = [], Z = [].\n"
    "app(X,Y,Z) :- X = [a|V], Y = [a|U], Z = [a,a|W], app(V,U,W).\n";

inline const char* const kQuery = "rev(X,Y):true";

// Tables from the worked examples, written with formulas.
inline const char* const kA =  // A1, A2
    "rev(X,Y) : true => X <-> Y\n"
    "app(X,Y,Z) : true => (X & Y) <-> Z\n";

inline const char* const kD =  // D1, D2, D3
    "rev(X,Y):true => rev/2/2#2 rev(V,W):true\n"
    "rev(X,Y):true => rev/2/2#4 app(W,T,Y):true\n"
    "app(X,Y,Z):true => app/3/2#3 app(V,Y,W):true\n";

inline const char* const kNA =  // NA1, NA2, NA3
    "rev(X,Y) : true => X & Y\n"
    "app(X,Y,Z) : true => X & Y & Z\n"
    "app(X,Y,Z) : X => X & Y & Z\n";

inline const char* const kNA13 =  // NA1, NA3
    "rev(X,Y) : true => X & Y\n"
    "app(X,Y,Z) : X => X & Y & Z\n";

inline const char* const kND =  // ND1, ND2, ND3
    "rev(X,Y):true => rev/2/2#2 rev(V,W):true\n"
    "rev(X,Y):true => rev/2/2#4 app(W,T,Y):W\n"
    "app(X,Y,Z):X => app/3/2#4 app(V,U,W):V\n";

}  // namespace fixtures
