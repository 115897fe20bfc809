"""
Word property service – FastAPI server
Includes:
- Catalog listing and group info
- Exact satisfaction probabilities
- w_{m,n}-property checks with witnesses
- Main order bound
- Group upload / download (see groups.py)
"""
from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field
import logging
from typing import Optional
from datetime import datetime, timezone
from contextlib import asynccontextmanager

import config
from catalog import default_catalog
from group_core import Group, center, is_abelian
from tools.bounds import GapConstant, format_number, main_bound, main_bound_holds
from tools.property_check import OverlapPolicy, PropertyQuery, has_wmn_property
from tools.wordgraph import build, satisfaction_probability
from word_engine import Word, named_word, parse

from .groups import registry, router as groups_router

# ----------------------------------------------------------------------
# Logging
# ----------------------------------------------------------------------
logger = logging.getLogger("api")
logging.basicConfig(level=config.LOG_LEVEL)

MAX_CATALOG_ORDER = 128


# ----------------------------------------------------------------------
# FastAPI App + Lifespan
# ----------------------------------------------------------------------
@asynccontextmanager
async def lifespan(app: FastAPI):
    logger.info(f"Server started (search caps m <= {config.SEARCH_MAX_M}, order <= {config.SEARCH_MAX_ORDER})")
    yield
    logger.info("Server shutting down")


app = FastAPI(lifespan=lifespan)

# Groups router (for /api/groups/* etc.)
app.include_router(groups_router)


# ----------------------------------------------------------------------
# Helpers
# ----------------------------------------------------------------------
def _resolve_group(name: str) -> Group:
    try:
        return registry.get(name)
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))


def _resolve_word(word: Optional[str], named: Optional[str]) -> Word:
    if (word is None) == (named is None):
        raise HTTPException(status_code=400, detail="Give exactly one of 'word' and 'named'")
    try:
        return named_word(named) if named is not None else parse(word)
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))


# ----------------------------------------------------------------------
# Pydantic Models
# ----------------------------------------------------------------------
class GroupRequest(BaseModel):
    group: str


class WordRequest(GroupRequest):
    word: Optional[str] = None
    named: Optional[str] = None


class PropertyRequest(WordRequest):
    m: int = Field(..., ge=1)
    n: int = Field(..., ge=1)
    policy: OverlapPolicy = OverlapPolicy.ALLOW_OVERLAP


class BoundRequest(BaseModel):
    gamma: str
    m: int
    n: int
    order: Optional[int] = None


# ----------------------------------------------------------------------
# Routes – Root & Health
# ----------------------------------------------------------------------
@app.get("/")
async def root():
    return {
        "message": "Word property API is running",
        "endpoints": {
            "catalog": "/groups/catalog",
            "group_info": "POST /groups/info",
            "probability": "POST /words/probability",
            "property": "POST /property/check",
            "main_bound": "POST /bounds/main",
            "upload": "POST /api/groups/upload",
            "health": "/health",
        },
        "docs": "/docs",
    }


@app.get("/health")
async def health():
    return {
        "status": "healthy",
        "registered_groups": len(registry.groups),
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }


# ----------------------------------------------------------------------
# Groups
# ----------------------------------------------------------------------
@app.get("/groups/catalog")
def catalog(max_order: int = 16):
    if not 1 <= max_order <= MAX_CATALOG_ORDER:
        raise HTTPException(status_code=400, detail=f"max_order must lie in [1, {MAX_CATALOG_ORDER}]")
    entries = [e.to_dict() for e in default_catalog(max_order)]
    return {"max_order": max_order, "count": len(entries), "entries": entries}


@app.post("/groups/info")
def group_info(request: GroupRequest):
    g = _resolve_group(request.group)
    return {"group": g.name, "order": g.order, "abelian": is_abelian(g), "center": len(center(g))}


# ----------------------------------------------------------------------
# Words & Property
# ----------------------------------------------------------------------
@app.post("/words/probability")
def word_probability(request: WordRequest):
    g = _resolve_group(request.group)
    w = _resolve_word(request.word, request.named)
    graph = build(g, w)
    return {
        "group": g.name,
        "word": str(w),
        "identity": graph.arc_count == 0,
        "arcs": graph.arc_count,
        "probability": format_number(satisfaction_probability(graph)),
    }


@app.post("/property/check")
def property_check(request: PropertyRequest):
    g = _resolve_group(request.group)
    w = _resolve_word(request.word, request.named)
    try:
        query = PropertyQuery(request.m, request.n, request.policy)
        result = has_wmn_property(build(g, w), query)
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    return {"group": g.name, "word": str(w), "m": query.m, "n": query.n, "policy": query.overlap_policy.value, **result.to_dict()}


# ----------------------------------------------------------------------
# Bounds
# ----------------------------------------------------------------------
@app.post("/bounds/main")
def bounds_main(request: BoundRequest):
    try:
        gamma = GapConstant.parse(request.gamma)
        response = {"gamma": format_number(gamma.gamma), "m": request.m, "n": request.n,
                    "bound": format_number(main_bound(gamma, request.m, request.n))}
        if request.order is not None:
            response["holds"] = main_bound_holds(request.order, gamma, request.m, request.n).holds
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    return response
