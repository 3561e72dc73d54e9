"""인스턴스 직렬화 모듈 (JSON 호환 구조화 텍스트).

Python float의 repr은 최단 왕복 표현(최대 17 유효숫자)이므로 저장/로드가 무손실입니다.
"""

import json
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from sparserl.src.exceptions.invalid_instance_error import InvalidInstanceError
from sparserl.src.linmdp.feature_map import FeatureMap
from sparserl.src.linmdp.models import SparseLinearMDP


class InstanceDocument(BaseModel):
    """인스턴스 파일 스키마.

    hard_instance는 어려운 인스턴스 생성 파라미터 사이드카 블록입니다.
    """

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    d: int = Field(ge=1)
    s: int = Field(ge=1)
    horizon: int = Field(alias="H", ge=1)
    states: list[str] | int
    actions_per_state: list[int]
    phi: list[list[float]]
    psi: list[list[float]]
    rewards: list[float]
    xi0: list[float]
    active_set: list[int]
    hard_instance: dict[str, Any] | None = None

    @property
    def state_labels(self) -> tuple[str, ...]:
        if isinstance(self.states, int):
            return tuple(str(x) for x in range(self.states))
        return tuple(self.states)


def instance_to_document(
    mdp: SparseLinearMDP, sidecar: dict[str, Any] | None = None
) -> InstanceDocument:
    """인스턴스를 직렬화 문서로 변환합니다."""
    return InstanceDocument(
        d=mdp.d,
        s=mdp.sparsity,
        horizon=mdp.horizon,
        states=list(mdp.state_labels),
        actions_per_state=list(mdp.actions_per_state),
        phi=mdp.phi.tolist(),
        psi=mdp.factors.tolist(),
        rewards=mdp.rewards.tolist(),
        xi0=mdp.initial_distribution.tolist(),
        active_set=list(mdp.active_set),
        hard_instance=sidecar,
    )


def document_to_instance(document: InstanceDocument) -> SparseLinearMDP:
    """직렬화 문서로부터 인스턴스를 구성합니다.

    Raises:
        InvalidInstanceError: 모양이나 값이 맞지 않는 경우
    """
    if any(len(row) != document.d for row in document.phi):
        raise InvalidInstanceError(f"phi의 모든 행 길이는 d={document.d}여야 합니다", "phi")
    return SparseLinearMDP(
        feature_map=FeatureMap(document.phi),
        factors=document.psi,
        active_set=tuple(document.active_set),
        sparsity=document.s,
        horizon=document.horizon,
        rewards=document.rewards,
        initial_distribution=document.xi0,
        actions_per_state=tuple(document.actions_per_state),
        state_labels=document.state_labels,
    )


def dump_instance(
    mdp: SparseLinearMDP, path: Path, sidecar: dict[str, Any] | None = None
) -> Path:
    """인스턴스를 JSON 파일로 저장합니다."""
    document = instance_to_document(mdp, sidecar)
    payload = document.model_dump(mode="json", by_alias=True, exclude_none=True)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return path


def load_instance_document(path: Path) -> InstanceDocument:
    """인스턴스 파일을 읽어 스키마 검증된 문서를 반환합니다.

    Raises:
        InvalidInstanceError: 파일이 없거나 JSON/스키마가 잘못된 경우
    """
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InvalidInstanceError(f"인스턴스 파일을 읽을 수 없습니다: {path} ({e})") from e
    try:
        return InstanceDocument.model_validate_json(raw)
    except ValidationError as e:
        raise InvalidInstanceError(
            f"인스턴스 파일 형식이 잘못되었습니다: {path} ({e.error_count()}개 오류)"
        ) from e


def load_instance(path: Path) -> SparseLinearMDP:
    """인스턴스 파일을 읽어 SparseLinearMDP를 반환합니다."""
    return document_to_instance(load_instance_document(path))
