from fastapi import APIRouter, UploadFile, File, HTTPException
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel
import logging
import uuid
from typing import List

from catalog import GroupCatalog
from group_core import center, is_abelian
from scripts.import_export import dump_group, parse_group

logger = logging.getLogger(__name__)

# Uploaded groups live in process memory only
registry = GroupCatalog()

router = APIRouter(prefix="/api/groups", tags=["groups"])


class GroupMeta(BaseModel):
    id: str
    name: str
    order: int
    abelian: bool


class UploadedGroup(GroupMeta):
    center: int


@router.get("/list", response_model=List[GroupMeta])
def list_groups():
    return registry.list_registered()


@router.post("/upload", response_model=UploadedGroup)
async def upload_group(file: UploadFile = File(...)):
    """
    Upload a Cayley table or permutation generator file and register the
    validated group under a fresh id.
    """
    try:
        content = await file.read()
    finally:
        await file.close()

    try:
        text = content.decode("utf-8")
    except UnicodeDecodeError:
        raise HTTPException(status_code=400, detail="Expected a UTF-8 JSON file.")

    try:
        group = parse_group(text, file.filename or "<upload>")
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))

    group_id = str(uuid.uuid4())
    registry.register_group(group_id, group)
    return {
        "id": group_id,
        "name": group.name,
        "order": group.order,
        "abelian": is_abelian(group),
        "center": len(center(group)),
    }


@router.get("/download/{group_id}")
def download_group(group_id: str):
    group = registry.groups.get(group_id)
    if group is None:
        raise HTTPException(status_code=404, detail="Group not found")
    return PlainTextResponse(
        dump_group(group),
        media_type="application/json",
        headers={"Content-Disposition": f'attachment; filename="{group_id}.json"'},
    )
