import { ApiClient } from "./api";
import { App } from "./app";

new App(document.getElementById("app")!, new ApiClient());
