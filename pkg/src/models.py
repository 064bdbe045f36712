"""
fregress Core Data Models
Validated configuration shared by the library and the CLI
"""

from enum import Enum
from typing import Optional
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.config import get_solver_settings


class KernelKind(str, Enum):
    """Supported reproducing kernels"""
    BERNOULLI_W22 = "bernoulli_w22"


class ScenarioKind(str, Enum):
    """Simulation designs for the coefficient functions"""
    A_EXPONENTIAL = "A_Exponential"
    B_RANDOM = "B_Random"


class GridKind(str, Enum):
    """How simulated sample points are placed on [0, 1]"""
    EQUISPACED = "equispaced"
    RANDOM = "random"


class Command(str, Enum):
    """CLI commands"""
    SIMULATE = "simulate"
    FIT = "fit"
    PREDICT = "predict"
    CV = "cv"
    BENCH = "bench"
    BACKTEST = "backtest"


class KernelSpec(BaseModel):
    """Reproducing kernel selection (no parameters for the Bernoulli kernel)"""
    model_config = ConfigDict(frozen=True)

    kind: KernelKind = KernelKind.BERNOULLI_W22


class PenaltyConfig(BaseModel):
    """Penalty levels and convergence controls for one fit"""
    model_config = ConfigDict(frozen=True)

    lambda1: float = Field(..., ge=0, description="Hilbert-Schmidt penalty on A")
    lambda2: float = Field(default=0.0, ge=0, description="RKHS-norm penalty on each beta_l")
    lambda3: float = Field(default=0.0, ge=0, description="Group lasso penalty")
    epsilon: float = Field(default_factory=lambda: get_solver_settings().epsilon, gt=0)
    l_max: int = Field(default_factory=lambda: get_solver_settings().l_max, ge=1)

    def with_lambdas(self, lambda1: float, lambda2: float, lambda3: float) -> "PenaltyConfig":
        return self.model_copy(update={"lambda1": lambda1, "lambda2": lambda2, "lambda3": lambda3})


class CVConfig(BaseModel):
    """k-fold cross-validation over a penalty grid"""
    model_config = ConfigDict(frozen=True)

    folds: int = Field(default=5, ge=2)
    lambda1_grid: list[float] = Field(..., min_length=1)
    lambda2_grid: list[float] = Field(default_factory=lambda: [0.0], min_length=1)
    lambda3_grid: list[float] = Field(default_factory=lambda: [0.0], min_length=1)
    seed: int = Field(default=0, ge=0)

    @field_validator("lambda1_grid")
    @classmethod
    def validate_lambda1_grid(cls, v):
        if any(value <= 0 for value in v):
            raise ValueError("lambda1 grid values must be > 0")
        return v

    @field_validator("lambda2_grid", "lambda3_grid")
    @classmethod
    def validate_nonnegative_grid(cls, v):
        if any(value < 0 for value in v):
            raise ValueError("lambda2 / lambda3 grid values must be >= 0")
        return v

    @property
    def size(self) -> int:
        return len(self.lambda1_grid) * len(self.lambda2_grid) * len(self.lambda3_grid)


class SimulationScenario(BaseModel):
    """Parameters of the synthetic data generator"""
    model_config = ConfigDict(frozen=True)

    kind: ScenarioKind = ScenarioKind.A_EXPONENTIAL
    q: int = Field(default=5, ge=1, description="Basis dimension")
    kappa: float = Field(default=1.0, gt=0, description="Signal scale")
    p: int = Field(default=0, ge=0, description="Number of vector covariates")
    seed: int = Field(default=0, ge=0)
    grid_kind: GridKind = GridKind.EQUISPACED


class BenchCell(BaseModel):
    """One row of the simulation tables"""
    model_config = ConfigDict(frozen=True)

    scenario: ScenarioKind = ScenarioKind.A_EXPONENTIAL
    n: int = Field(default=5, ge=1)
    T: int = Field(default=50, ge=2)
    q: int = Field(default=5, ge=1)
    kappa: float = Field(default=1.0, gt=0)
    p: int = Field(default=0, ge=0)


class RunConfig(BaseModel):
    """Everything a CLI command needs; loaded from --config JSON, then overridden by flags"""

    command: Optional[Command] = None
    out: str = "."
    seed: int = Field(default=0, ge=0)

    # Inputs
    data: Optional[str] = None
    test_data: Optional[str] = None
    model: Optional[str] = None
    target_points: Optional[list[float]] = None

    # Simulation / bench cell
    scenario: ScenarioKind = ScenarioKind.A_EXPONENTIAL
    n: int = Field(default=5, ge=1)
    T: int = Field(default=50, ge=1)
    q: int = Field(default=5, ge=1)
    kappa: float = Field(default=1.0, gt=0)
    p: int = Field(default=0, ge=0)
    grid_kind: GridKind = GridKind.EQUISPACED

    # Estimation
    penalty: Optional[PenaltyConfig] = None
    cv: Optional[CVConfig] = None
    preset: Optional[str] = None
    folds: int = Field(default=5, ge=2, description="Folds used with a named preset grid")

    # Bench
    replicates: int = Field(default=1, ge=1)
    cells: list[BenchCell] = Field(default_factory=list)
    n_jobs: int = Field(default=1, ge=1)
    timing: bool = Field(default=True, description="Record wall time; disable for byte-identical output")

    # Backtest
    horizon: Optional[float] = Field(default=None, gt=0, description="End of the panel window (last point by default)")
    split_points: list[float] = Field(default_factory=list)
    use_covariates: bool = True

    # fit selects lambdas by cross-validation when no penalty is given or tune is set
    tune: bool = False

    @model_validator(mode="after")
    def default_cell(self):
        if not self.cells and self.command == Command.BENCH:
            self.cells = [BenchCell(
                scenario=self.scenario, n=self.n, T=max(self.T, 2), q=self.q, kappa=self.kappa, p=self.p
            )]
        return self


class ModelFile(BaseModel):
    """Serialized fit: grids, representer coefficients and convergence metadata"""

    format_version: int = 1
    kernel: KernelSpec = Field(default_factory=KernelSpec)
    x_grid: list[float]
    y_grid: list[float]
    R: list[list[float]]
    B: list[list[float]]
    p: int = Field(..., ge=0)
    penalty: PenaltyConfig
    converged: bool
    iterations: int
    objective_trace: list[float]


class OracleFile(BaseModel):
    """Serialized simulation truth written next to the train/test CSVs"""

    format_version: int = 1
    kind: ScenarioKind
    kappa: float = Field(..., gt=0)
    q: int = Field(..., ge=1)
    p: int = Field(..., ge=0)
    seed: int = Field(..., ge=0)
    lam: Optional[list[list[float]]] = Field(default=None, description="Scenario B coefficient matrix")
    b: Optional[list[float]] = Field(default=None, description="Scenario B beta coefficients")
    train_x_basis: list[list[float]] = Field(default_factory=list, description="q x T_train basis coefficients")
    test_x_basis: list[list[float]] = Field(default_factory=list, description="q x T_test basis coefficients")
